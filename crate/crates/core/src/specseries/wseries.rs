use std::collections::BTreeMap;
use std::fmt;

use crate::error::Result;
use crate::rational::Rational;
use crate::ring::{not_invertible, Invertible, Ring, Truncation, WindowEq};
use crate::superweyl::Grade;
use crate::window::Comparison;

/// A Laurent series `sum_q c_q w^q` in a central variable `w`, with finitely
/// many negative powers. `ceiling` is the highest certified power; `None`
/// means the series is known exactly.
#[derive(Clone, PartialEq, Eq)]
pub struct WSeries<R> {
    coeffs: BTreeMap<i64, R>,
    ceiling: Option<i64>,
}

fn min_ceiling(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn max_ceiling(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl<R: Ring> Default for WSeries<R> {
    fn default() -> Self {
        Self { coeffs: BTreeMap::new(), ceiling: None }
    }
}

impl<R: Ring> WSeries<R> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(R::one())
    }

    pub fn constant(c: R) -> Self {
        Self::monomial(0, c)
    }

    /// `c w^q`
    pub fn monomial(q: i64, c: R) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(q, c);
        }
        Self { coeffs, ceiling: None }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, R)>, ceiling: Option<i64>) -> Self {
        let mut out = Self { coeffs: BTreeMap::new(), ceiling };
        for (q, c) in terms {
            out.add_term(q, &c);
        }
        out
    }

    fn add_term(&mut self, q: i64, c: &R) {
        if self.ceiling.is_some_and(|t| q > t) {
            return;
        }
        match self.coeffs.get_mut(&q) {
            Some(x) => {
                *x = x.add(c);
                if x.is_zero() {
                    self.coeffs.remove(&q);
                }
            }
            None => {
                if !c.is_zero() {
                    self.coeffs.insert(q, c.clone());
                }
            }
        }
    }

    pub fn ceiling(&self) -> Option<i64> {
        self.ceiling
    }

    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.ceiling.is_none()
    }

    /// Lowest power present.
    pub fn low(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn high(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    fn effective_low(&self) -> Option<i64> {
        min_ceiling(self.low(), self.ceiling.map(|c| c + 1))
    }

    /// Coefficient of `w^q`, or `None` above the ceiling.
    pub fn coeff(&self, q: i64) -> Option<R> {
        if self.ceiling.is_some_and(|t| q > t) {
            return None;
        }
        Some(self.coeffs.get(&q).cloned().unwrap_or_else(R::zero))
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &R)> {
        self.coeffs.iter().map(|(&q, c)| (q, c))
    }

    pub fn truncate_above(&mut self, t: i64) {
        if self.ceiling.is_some_and(|c| c <= t) {
            return;
        }
        self.ceiling = Some(t);
        let _ = self.coeffs.split_off(&(t + 1));
    }

    pub fn truncated_above(mut self, t: i64) -> Self {
        self.truncate_above(t);
        self
    }

    /// Multiplication by `w^by`.
    pub fn shift(&self, by: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&q, c)| (q + by, c.clone())).collect(),
            ceiling: self.ceiling.map(|t| t + by),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&R) -> R) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(&q, c)| (q, f(c))), self.ceiling)
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        if let Some(t) = other.ceiling {
            out.truncate_above(t);
        }
        for (q, c) in other.terms() {
            out.add_term(q, c);
        }
        out
    }

    pub fn neg_ref(&self) -> Self {
        self.map_coeffs(R::neg)
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        self.mul_with_ceiling(other, None)
    }

    /// Product, additionally forgetting all powers above `at_most`.
    pub fn mul_with_ceiling(&self, other: &Self, at_most: Option<i64>) -> Self {
        if self.is_exact_zero() || other.is_exact_zero() {
            return Self::zero();
        }
        let mut ceiling = None;
        if let (Some(c), Some(l)) = (self.ceiling, other.effective_low()) {
            ceiling = min_ceiling(ceiling, Some(c + l));
        }
        if let (Some(c), Some(l)) = (other.ceiling, self.effective_low()) {
            ceiling = min_ceiling(ceiling, Some(c + l));
        }
        if let Some(cap) = max_ceiling(self.ceiling, other.ceiling) {
            ceiling = ceiling.map(|c| c.min(cap));
        }
        ceiling = min_ceiling(ceiling, at_most);
        let mut out = Self { coeffs: BTreeMap::new(), ceiling };
        for (q1, c1) in self.terms() {
            for (q2, c2) in other.terms() {
                if ceiling.is_some_and(|t| q1 + q2 > t) {
                    break;
                }
                out.add_term(q1 + q2, &c1.mul(c2));
            }
        }
        out
    }

    pub fn grade(&self) -> Grade {
        self.coeffs.values().fold(Grade::Zero, |g, c| g.join(c.grade()))
    }
}

impl<R: Invertible> WSeries<R> {
    /// Inverse of `w^L (c + higher)` with `c` invertible in the coefficients.
    pub fn inverse(&self, trunc: &Truncation) -> Result<Self> {
        let low = self.low().ok_or_else(|| not_invertible("zero w-series"))?;
        let c_inv = self.coeffs[&low].inverse(trunc)?;
        let mut ceiling = trunc.w_top;
        if let Some(c) = self.ceiling {
            ceiling = ceiling.min(c - 2 * low);
        }
        let target = ceiling + low;
        // self = w^L c (1 + n)
        let mut n = Self::constant(c_inv.clone()).mul_with_ceiling(&self.shift(-low), Some(target));
        n.coeffs.remove(&0);
        let neg_n = n.neg_ref();
        let mut sum = Self::one().truncated_above(target);
        let mut term = Self::one();
        loop {
            term = neg_n.mul_with_ceiling(&term, Some(target));
            if term.coeffs.is_empty() {
                break;
            }
            sum = sum.add_ref(&term);
        }
        let out = sum.mul_with_ceiling(&Self::constant(c_inv), Some(target));
        Ok(out.shift(-low))
    }
}

impl<R: WindowEq + Ring> WSeries<R> {
    /// Slot-wise comparison on powers certified by both sides.
    pub fn compare(&self, other: &Self) -> Comparison {
        let ceiling = min_ceiling(self.ceiling, other.ceiling);
        let mut powers: Vec<i64> = self.coeffs.keys().chain(other.coeffs.keys()).copied().collect();
        powers.sort_unstable();
        powers.dedup();
        let mut cmp = Comparison::default();
        let mut inner = String::new();
        for q in powers {
            if ceiling.is_some_and(|t| q > t) {
                continue;
            }
            let c = self.coeff(q).unwrap().compare_window(&other.coeff(q).unwrap());
            if inner.is_empty() {
                inner = c.window.clone();
            }
            cmp.absorb(&[q], c);
        }
        let w = ceiling.map_or("exact".to_string(), |t| format!("w <= {t}"));
        cmp.window = if inner.is_empty() { w } else { format!("{w}; {inner}") };
        cmp
    }
}

impl<R: Ring> Ring for WSeries<R> {
    fn zero() -> Self {
        WSeries::zero()
    }
    fn one() -> Self {
        WSeries::one()
    }
    fn is_zero(&self) -> bool {
        self.is_exact_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        self.add_ref(rhs)
    }
    fn neg(&self) -> Self {
        self.neg_ref()
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.mul_ref(rhs)
    }
    fn scale(&self, c: &Rational) -> Self {
        self.map_coeffs(|x| x.scale(c))
    }
    fn grade(&self) -> Grade {
        WSeries::grade(self)
    }
}

impl<R: Invertible> Invertible for WSeries<R> {
    fn inverse(&self, trunc: &Truncation) -> Result<Self> {
        WSeries::inverse(self, trunc)
    }
}

impl<R: WindowEq + Ring> WindowEq for WSeries<R> {
    fn compare_window(&self, other: &Self) -> Comparison {
        self.compare(other)
    }
}

impl<R: fmt::Debug> fmt::Debug for WSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WSeries{{")?;
        for (q, c) in &self.coeffs {
            write!(f, " w^{q}: {c:?};")?;
        }
        if let Some(t) = self.ceiling {
            write!(f, " O(w^{})", t + 1)?;
        }
        write!(f, " }}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn affine_geometric_inverse() {
        let trunc = Truncation::new(-10, -8, 6);
        let a: WSeries<Rational> = WSeries::from_terms([(0, q(1)), (1, q(2))], None);
        let inv = a.inverse(&trunc).unwrap();
        assert_eq!(inv.ceiling(), Some(6));
        for p in 0..=6 {
            assert_eq!(inv.coeff(p).unwrap(), q(-2).pow(p as u32));
        }
        let back = a.mul_ref(&inv);
        assert_eq!(back, WSeries::one().truncated_above(6));
    }

    #[test]
    fn pole_inverse() {
        let trunc = Truncation::new(-10, -8, 6);
        // w^{-1} + 3
        let a: WSeries<Rational> = WSeries::from_terms([(-1, q(1)), (0, q(3))], None);
        let inv = a.inverse(&trunc).unwrap();
        assert_eq!(inv.low(), Some(1));
        let back = inv.mul_ref(&a);
        assert!(back.compare(&WSeries::one()).all_pass());
        assert!(back.ceiling().unwrap() >= 5);
    }

    #[test]
    fn ceiling_rules() {
        let a: WSeries<Rational> = WSeries::one().truncated_above(4);
        let w2: WSeries<Rational> = WSeries::monomial(2, q(1));
        assert_eq!(a.mul_ref(&w2).ceiling(), Some(4));
        let pole: WSeries<Rational> = WSeries::monomial(-1, q(1));
        assert_eq!(a.mul_ref(&pole).ceiling(), Some(3));
    }
}
