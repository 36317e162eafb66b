//! Matrices over noncommutative superrings: column and row determinants,
//! quasi-minors, Berezinians of arbitrary parity and the Manin relations.

mod matrix;
pub mod perm;

pub use matrix::{ManinReport, ManinViolation, NCMatrix};

#[cfg(test)]
mod tests;
