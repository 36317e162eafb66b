//! Exact noncommutative computer algebra for Berezinians of Manin matrices,
//! column determinants over Weyl superalgebras and the gl(m|n) / gl(k)
//! duality of Gaudin models.

pub mod error;
pub mod fock;
pub mod gaudin;
pub mod ncmatrix;
pub mod rational;
pub mod specseries;
pub mod ring;
pub mod superweyl;
pub mod window;

pub use error::{AlgebraError, Result};
pub use rational::Rational;
pub use ring::{Invertible, Ring, Truncation, WindowEq};
