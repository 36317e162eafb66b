use std::collections::BTreeMap;
use std::fmt;

use crate::error::Result;
use crate::rational::Rational;
use crate::ring::{not_invertible, Invertible, Ring, Truncation, WindowEq};
use crate::superweyl::{Grade, NOElement};
use crate::window::Comparison;

/// A Laurent series `sum_d c_d v^d` in a central spectral variable with
/// coefficients in the Weyl superalgebra.
///
/// `floor` is the lowest certified degree: coefficients below it are unknown
/// and never stored. `None` means the series is known exactly.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct VSeries {
    coeffs: BTreeMap<i64, NOElement>,
    floor: Option<i64>,
}

pub(crate) fn max_floor(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

pub(crate) fn min_floor(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Floor of a product given each factor's floor and effective top.
/// The result is never below the shallower of the two input floors.
pub(crate) fn product_floor(
    f1: Option<i64>,
    t1: Option<i64>,
    f2: Option<i64>,
    t2: Option<i64>,
) -> Option<i64> {
    let mut pess = None;
    if let (Some(f), Some(t)) = (f1, t2) {
        pess = max_floor(pess, Some(f + t));
    }
    if let (Some(f), Some(t)) = (f2, t1) {
        pess = max_floor(pess, Some(f + t));
    }
    pess.map(|p| p.max(min_floor(f1, f2).unwrap_or(p)))
}

impl VSeries {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(NOElement::one())
    }

    pub fn constant(c: NOElement) -> Self {
        Self::monomial(0, c)
    }

    pub fn scalar(c: Rational) -> Self {
        Self::constant(NOElement::scalar(c))
    }

    /// `c v^d`
    pub fn monomial(d: i64, c: NOElement) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(d, c);
        }
        Self { coeffs, floor: None }
    }

    /// `v - z`
    pub fn v_minus(z: &Rational) -> Self {
        Self::from_terms([(1, NOElement::one()), (0, NOElement::scalar(-z))], None)
    }

    /// Series with the given coefficients; terms below `floor` are dropped.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, NOElement)>, floor: Option<i64>) -> Self {
        let mut coeffs: BTreeMap<i64, NOElement> = BTreeMap::new();
        for (d, c) in terms {
            if floor.is_some_and(|f| d < f) {
                continue;
            }
            coeffs.entry(d).or_default().add_assign_ref(&c);
        }
        coeffs.retain(|_, c| !c.is_zero());
        Self { coeffs, floor }
    }

    pub fn floor(&self) -> Option<i64> {
        self.floor
    }

    pub fn is_exact(&self) -> bool {
        self.floor.is_none()
    }

    /// Highest degree with a nonzero known coefficient.
    pub fn top(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Lowest degree with a nonzero known coefficient.
    pub fn bottom(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Upper bound for the degrees of the whole series, known or not.
    pub(crate) fn effective_top(&self) -> Option<i64> {
        max_floor(self.top(), self.floor.map(|f| f - 1))
    }

    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.floor.is_none()
    }

    pub fn known_is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `v^d`, or `None` if `d` lies below the floor.
    pub fn coeff(&self, d: i64) -> Option<NOElement> {
        if self.floor.is_some_and(|f| d < f) {
            return None;
        }
        Some(self.coeffs.get(&d).cloned().unwrap_or_default())
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &NOElement)> {
        self.coeffs.iter().map(|(&d, c)| (d, c))
    }

    /// Forgets everything below `f`.
    pub fn truncate_below(&mut self, f: i64) {
        if self.floor.is_some_and(|g| g >= f) {
            return;
        }
        self.floor = Some(f);
        self.coeffs = self.coeffs.split_off(&f);
    }

    pub fn truncated_below(mut self, f: i64) -> Self {
        self.truncate_below(f);
        self
    }

    pub fn is_polynomial(&self) -> bool {
        self.floor.is_none() && self.bottom().map_or(true, |b| b >= 0)
    }

    /// `d/dv`. The floor is kept, so the coefficient just below it is dropped.
    pub fn derivative(&self) -> Self {
        let terms = self
            .coeffs
            .iter()
            .filter(|(&d, _)| d != 0)
            .map(|(&d, c)| (d - 1, c.scale_ref(&Rational::from_int(d))));
        Self::from_terms(terms, self.floor)
    }

    pub fn left_mul_element(&self, e: &NOElement) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(&d, c)| (d, e.mul_ref(c))), self.floor)
    }

    pub fn right_mul_element(&self, e: &NOElement) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(&d, c)| (d, c.mul_ref(e))), self.floor)
    }

    pub fn shift(&self, by: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&d, c)| (d + by, c.clone())).collect(),
            floor: self.floor.map(|f| f + by),
        }
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let floor = max_floor(self.floor, other.floor);
        let terms = self.terms().chain(other.terms()).map(|(d, c)| (d, c.clone()));
        Self::from_terms(terms, floor)
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        let floor = max_floor(self.floor, other.floor);
        for (d, c) in other.terms() {
            if floor.is_some_and(|f| d < f) {
                continue;
            }
            let entry = self.coeffs.entry(d).or_default();
            entry.add_assign_ref(c);
            if entry.is_zero() {
                self.coeffs.remove(&d);
            }
        }
        if let Some(f) = floor {
            self.truncate_below(f);
        }
    }

    pub fn neg_ref(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&d, c)| (d, c.neg_ref())).collect(),
            floor: self.floor,
        }
    }

    pub fn scale_ref(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self { coeffs: BTreeMap::new(), floor: self.floor };
        }
        Self {
            coeffs: self.coeffs.iter().map(|(&d, x)| (d, x.scale_ref(c))).collect(),
            floor: self.floor,
        }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        self.mul_with_floor(other, None)
    }

    /// Product, additionally forgetting all degrees below `at_least`.
    pub fn mul_with_floor(&self, other: &Self, at_least: Option<i64>) -> Self {
        if self.is_exact_zero() || other.is_exact_zero() {
            return Self::zero();
        }
        let floor = max_floor(
            product_floor(self.floor, self.effective_top(), other.floor, other.effective_top()),
            at_least,
        );
        let mut acc: BTreeMap<i64, NOElement> = BTreeMap::new();
        for (d1, c1) in self.terms() {
            for (d2, c2) in other.terms().rev() {
                let d = d1 + d2;
                if floor.is_some_and(|f| d < f) {
                    break;
                }
                let prod = c1.mul_ref(c2);
                if !prod.is_zero() {
                    acc.entry(d).or_default().add_assign_ref(&prod);
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Self { coeffs: acc, floor }
    }

    pub fn grade(&self) -> Grade {
        self.coeffs.values().fold(Grade::Zero, |g, c| g.join(c.grade()))
    }

    /// Inverse of a series whose top coefficient is a nonzero rational.
    pub fn inverse(&self, trunc: &Truncation) -> Result<Self> {
        let top = self.top().ok_or_else(|| not_invertible("zero series"))?;
        let lead = self.coeffs[&top]
            .as_scalar()
            .ok_or_else(|| not_invertible(format!("leading coefficient of {self} is not scalar")))?;
        let lead_inv = lead.inv()?;
        let mut floor = trunc.v_floor;
        if let Some(f) = self.floor {
            floor = floor.max(f - 2 * top);
        }
        // self = lead v^top (1 + r) with r of top degree <= -1
        let mut r = self.shift(-top).scale_ref(&lead_inv);
        r.coeffs.remove(&0);
        if r.is_exact_zero() {
            return Ok(Self::monomial(-top, NOElement::scalar(lead_inv)));
        }
        let target = floor + top;
        r.truncate_below(target);
        let neg_r = r.neg_ref();
        let mut sum = Self::one();
        let mut term = Self::one();
        loop {
            term = term.mul_with_floor(&neg_r, Some(target));
            if term.known_is_zero() {
                break;
            }
            sum.add_assign_ref(&term);
        }
        let mut out = sum.shift(-top).scale_ref(&lead_inv);
        out.truncate_below(floor);
        Ok(out)
    }

    /// Slot-wise comparison on degrees certified by both sides.
    pub fn compare(&self, other: &Self) -> Comparison {
        let floor = max_floor(self.floor, other.floor);
        let window = match floor {
            Some(f) => format!("v >= {f}"),
            None => "exact".to_string(),
        };
        let mut cmp = Comparison::new(window);
        let mut degrees: Vec<i64> = self.coeffs.keys().chain(other.coeffs.keys()).copied().collect();
        degrees.sort_unstable();
        degrees.dedup();
        for d in degrees {
            if floor.is_some_and(|f| d < f) {
                continue;
            }
            cmp.push(vec![d], self.coeff(d) == other.coeff(d));
        }
        cmp
    }
}

impl Ring for VSeries {
    fn zero() -> Self {
        VSeries::zero()
    }
    fn one() -> Self {
        VSeries::one()
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
        self.scale_ref(c)
    }
    fn grade(&self) -> Grade {
        VSeries::grade(self)
    }
}

impl Invertible for VSeries {
    fn inverse(&self, trunc: &Truncation) -> Result<Self> {
        VSeries::inverse(self, trunc)
    }
}

impl WindowEq for VSeries {
    fn compare_window(&self, other: &Self) -> Comparison {
        self.compare(other)
    }
}

impl fmt::Display for VSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.coeffs.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match d {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*v")?,
                _ => write!(f, "({c})*v^{d}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        if let Some(fl) = self.floor {
            write!(f, " + O(v^{})", fl - 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for VSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VSeries[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn geometric_series() {
        let trunc = Truncation::new(-10, -8, 6);
        let inv = VSeries::v_minus(&q(3)).inverse(&trunc).unwrap();
        assert_eq!(inv.floor(), Some(-10));
        for d in -10..=-1 {
            assert_eq!(inv.coeff(d).unwrap(), NOElement::scalar(q(3).pow((-d - 1) as u32)));
        }
        assert_eq!(inv.coeff(0).unwrap(), NOElement::zero());
        assert_eq!(inv.coeff(-11), None);
    }

    #[test]
    fn inverse_of_one() {
        let inv = VSeries::one().inverse(&Truncation::default()).unwrap();
        assert_eq!(inv, VSeries::one());
    }

    #[test]
    fn quadratic_round_trip() {
        let trunc = Truncation::new(-10, -8, 6);
        let p = VSeries::v_minus(&q(2)).mul_ref(&VSeries::v_minus(&q(3)));
        let inv = p.inverse(&trunc).unwrap();
        let back = p.mul_ref(&inv);
        let cmp = back.compare(&VSeries::one());
        assert!(cmp.all_pass());
        assert!(back.floor().unwrap() <= -8);
    }

    #[test]
    fn product_floor_rules() {
        let trunc = Truncation::new(-10, -8, 6);
        let inv = VSeries::v_minus(&q(1)).inverse(&trunc).unwrap();
        let sq = inv.mul_ref(&inv);
        assert_eq!(sq.floor(), Some(-10));
        let lifted = inv.mul_ref(&VSeries::v_minus(&q(5)));
        assert_eq!(lifted.floor(), Some(-9));
    }

    #[test]
    fn rejects_non_scalar_lead() {
        let alg = crate::superweyl::SuperWeyl::new(1, 0, 1);
        let s = VSeries::monomial(1, alg.x(1, 1));
        assert!(s.inverse(&Truncation::default()).is_err());
        assert!(VSeries::zero().inverse(&Truncation::default()).is_err());
    }
}
