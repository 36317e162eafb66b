//! Truncated series in a spectral variable, pseudodifferential operators in
//! its derivation, and Laurent series in an auxiliary variable `w`.

mod pdo;
mod phi;
mod vseries;
mod wseries;

pub use pdo::{Pdo, EXPANSION_DEPTH};
pub use phi::{phi, phi_hat, phi_hat_ceiling};
pub use vseries::VSeries;
pub use wseries::WSeries;
