//! The coefficient-ring abstraction shared by the matrix layer.

use std::fmt::Debug;

use crate::error::{AlgebraError, Result};
use crate::rational::Rational;
use crate::superweyl::Grade;

/// Truncation orders used whenever an inverse has to be expanded as a series.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Truncation {
    /// Lowest certified power of the spectral variable.
    pub v_floor: i64,
    /// Lowest certified power of the spectral derivation.
    pub d_floor: i64,
    /// Highest certified power of `w`.
    pub w_top: i64,
}

impl Truncation {
    pub fn new(v_floor: i64, d_floor: i64, w_top: i64) -> Self {
        Self { v_floor, d_floor, w_top }
    }
}

impl Default for Truncation {
    fn default() -> Self {
        Self { v_floor: -10, d_floor: -8, w_top: 6 }
    }
}

/// An associative unital superalgebra over the rationals.
///
/// Values may carry truncation data; arithmetic must propagate it so that
/// every coefficient reported as certified is exact.
pub trait Ring: Clone + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
    fn grade(&self) -> Grade;

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn from_rational(c: &Rational) -> Self {
        Self::one().scale(c)
    }

    /// `ab - (-1)^{|a||b|} ba`.
    fn super_commutator(&self, rhs: &Self) -> Result<Self> {
        let p = self.grade().parity()?;
        let q = rhs.grade().parity()?;
        let ab = self.mul(rhs);
        let ba = rhs.mul(self);
        Ok(if p.koszul(q) == 1 { ab.sub(&ba) } else { ab.add(&ba) })
    }
}

/// Rings in which (some) elements can be inverted, possibly as truncated series.
pub trait Invertible: Ring {
    fn inverse(&self, trunc: &Truncation) -> Result<Self>;
}

/// Comparison restricted to coefficients both sides certify.
pub trait WindowEq {
    /// Compares the two values slot by slot on the common certified window.
    fn compare_window(&self, other: &Self) -> crate::window::Comparison;
}

impl Ring for Rational {
    fn zero() -> Self {
        Rational::ZERO
    }
    fn one() -> Self {
        Rational::ONE
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
    fn grade(&self) -> Grade {
        if self.is_zero() {
            Grade::Zero
        } else {
            Grade::Pure(crate::superweyl::Parity::Even)
        }
    }
}

impl Invertible for Rational {
    fn inverse(&self, _trunc: &Truncation) -> Result<Self> {
        self.inv()
    }
}

pub(crate) fn not_invertible(what: impl Into<String>) -> AlgebraError {
    AlgebraError::NotInvertible(what.into())
}

impl WindowEq for Rational {
    fn compare_window(&self, other: &Self) -> crate::window::Comparison {
        let mut cmp = crate::window::Comparison::new("exact");
        cmp.push(vec![], self == other);
        cmp
    }
}

impl WindowEq for crate::superweyl::NOElement {
    fn compare_window(&self, other: &Self) -> crate::window::Comparison {
        let mut cmp = crate::window::Comparison::new("exact");
        cmp.push(vec![], self == other);
        cmp
    }
}
