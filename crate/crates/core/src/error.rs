use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("element is not homogeneous in parity")]
    NotHomogeneous,
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("matrix is not affine: {0}")]
    NotAffine(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("z must be pairwise distinct")]
    NonDistinctZ,
    #[error("certified window too shallow: {0}")]
    WindowTooShallow(String),
    #[error("operator does not preserve the weight space: {0}")]
    NotWeightPreserving(String),
    #[error("functions are not equivalent: {0}")]
    NotEquivalent(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
