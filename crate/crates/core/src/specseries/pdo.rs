use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use super::vseries::{max_floor, product_floor, VSeries};
use crate::error::Result;
use crate::rational::{binomial, Rational};
use crate::ring::{not_invertible, Invertible, Ring, Truncation, WindowEq};
use crate::superweyl::{Grade, NOElement};
use crate::window::Comparison;

/// How far below the operands' lowest orders a non-terminating product of
/// two order-exact operators is expanded.
pub const EXPANSION_DEPTH: i64 = 12;

/// A pseudodifferential operator `sum_r a_r(v) d^r`, coefficients on the left.
///
/// `floor` is the lowest certified order. Every stored coefficient carries its
/// own degree floor; an order that is absent (and not below `floor`) is
/// exactly zero. Coefficients that are zero on their certified window but
/// have unknown lower parts are kept.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Pdo {
    terms: BTreeMap<i64, VSeries>,
    floor: Option<i64>,
}

impl Pdo {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_series(VSeries::one())
    }

    pub fn from_series(a: VSeries) -> Self {
        Self::monomial(0, a)
    }

    pub fn scalar(c: Rational) -> Self {
        Self::from_series(VSeries::scalar(c))
    }

    pub fn element(e: NOElement) -> Self {
        Self::from_series(VSeries::constant(e))
    }

    /// `a d^r`
    pub fn monomial(r: i64, a: VSeries) -> Self {
        let mut terms = BTreeMap::new();
        if !a.is_exact_zero() {
            terms.insert(r, a);
        }
        Self { terms, floor: None }
    }

    /// `d^r`
    pub fn d_pow(r: i64) -> Self {
        Self::monomial(r, VSeries::one())
    }

    /// `d - c`
    pub fn d_minus(c: &Rational) -> Self {
        Self::from_terms([(1, VSeries::one()), (0, VSeries::scalar(-c))], None)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, VSeries)>, floor: Option<i64>) -> Self {
        let mut out = Self { terms: BTreeMap::new(), floor };
        for (r, a) in terms {
            out.add_term(r, &a);
        }
        out
    }

    fn add_term(&mut self, r: i64, a: &VSeries) {
        if self.floor.is_some_and(|f| r < f) {
            return;
        }
        match self.terms.get_mut(&r) {
            Some(x) => {
                x.add_assign_ref(a);
                if x.is_exact_zero() {
                    self.terms.remove(&r);
                }
            }
            None => {
                if !a.is_exact_zero() {
                    self.terms.insert(r, a.clone());
                }
            }
        }
    }

    pub fn floor(&self) -> Option<i64> {
        self.floor
    }

    pub fn is_exact(&self) -> bool {
        self.floor.is_none() && self.terms.values().all(VSeries::is_exact)
    }

    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.floor.is_none()
    }

    /// Highest stored order.
    pub fn top_order(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn bottom_order(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    fn effective_top(&self) -> Option<i64> {
        max_floor(self.top_order(), self.floor.map(|f| f - 1))
    }

    /// Largest known degree of any coefficient.
    pub fn degree_top(&self) -> Option<i64> {
        self.terms.values().filter_map(VSeries::top).max()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &VSeries)> {
        self.terms.iter().map(|(&r, a)| (r, a))
    }

    /// Coefficient of `d^r`, or `None` below the order floor.
    pub fn coeff(&self, r: i64) -> Option<VSeries> {
        if self.floor.is_some_and(|f| r < f) {
            return None;
        }
        Some(self.terms.get(&r).cloned().unwrap_or_default())
    }

    /// Coefficient of `v^d d^r`, or `None` if it is not certified.
    pub fn slot(&self, r: i64, d: i64) -> Option<NOElement> {
        self.coeff(r)?.coeff(d)
    }

    pub fn truncate_below(&mut self, f: i64) {
        if self.floor.is_some_and(|g| g >= f) {
            return;
        }
        self.floor = Some(f);
        self.terms = self.terms.split_off(&f);
    }

    pub fn truncated_below(mut self, f: i64) -> Self {
        self.truncate_below(f);
        self
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&VSeries) -> VSeries) -> Self {
        Self::from_terms(self.terms.iter().map(|(&r, a)| (r, f(a))), self.floor)
    }

    pub fn left_mul_element(&self, e: &NOElement) -> Self {
        self.map_coeffs(|a| a.left_mul_element(e))
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_ref(other);
        out
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        if let Some(f) = other.floor {
            self.truncate_below(f);
        }
        for (r, a) in other.terms() {
            self.add_term(r, a);
        }
    }

    pub fn neg_ref(&self) -> Self {
        self.map_coeffs(VSeries::neg_ref)
    }

    pub fn scale_ref(&self, c: &Rational) -> Self {
        self.map_coeffs(|a| a.scale_ref(c))
    }

    fn terminates(&self, other: &Self) -> bool {
        let left_neg = self.bottom_order().is_some_and(|r| r < 0);
        !left_neg || other.terms.values().all(VSeries::is_polynomial)
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        self.mul_with_floor(other, None)
    }

    /// Product via `d^r b = sum_t C(r,t) b^{(t)} d^{r-t}`, additionally
    /// forgetting all orders below `at_least`.
    pub fn mul_with_floor(&self, other: &Self, at_least: Option<i64>) -> Self {
        if self.is_exact_zero() || other.is_exact_zero() {
            return Self::zero();
        }
        let mut floor = max_floor(
            product_floor(self.floor, self.effective_top(), other.floor, other.effective_top()),
            at_least,
        );
        if floor.is_none() && !self.terminates(other) {
            let lowest = self.bottom_order().unwrap() + other.bottom_order().unwrap();
            floor = Some(lowest - EXPANSION_DEPTH);
        }
        let t_limit = |r: i64, s: i64| -> i64 {
            let deepest = floor.map_or(i64::MAX, |f| r + s - f);
            if r >= 0 {
                r.min(deepest)
            } else {
                deepest
            }
        };
        let max_t = self
            .terms
            .keys()
            .flat_map(|&r| other.terms.keys().map(move |&s| (r, s)))
            .map(|(r, s)| t_limit(r, s))
            .max()
            .unwrap_or(0);
        if max_t < 0 {
            return Self { terms: BTreeMap::new(), floor };
        }
        // derivatives of each right coefficient, computed once
        let derivs: Vec<(i64, Vec<VSeries>)> = other
            .terms
            .par_iter()
            .map(|(&s, b)| {
                let mut ds = vec![b.clone()];
                for _ in 0..max_t {
                    let next = ds.last().unwrap().derivative();
                    let stop = next.is_exact_zero();
                    ds.push(next);
                    if stop {
                        break;
                    }
                }
                (s, ds)
            })
            .collect();
        let jobs: Vec<(i64, &VSeries, i64, &Vec<VSeries>)> = self
            .terms
            .iter()
            .flat_map(|(&r, a)| derivs.iter().map(move |(s, ds)| (r, a, *s, ds)))
            .collect();
        let parts: Vec<Vec<(i64, VSeries)>> = jobs
            .par_iter()
            .map(|&(r, a, s, ds)| {
                let mut out = Vec::new();
                let t_max = t_limit(r, s);
                for (t, bt) in ds.iter().enumerate() {
                    let t = t as i64;
                    if t > t_max || bt.is_exact_zero() {
                        break;
                    }
                    let c = binomial(r, t as u64);
                    let prod = a.mul_ref(bt).scale_ref(&c);
                    if !prod.is_exact_zero() {
                        out.push((r + s - t, prod));
                    }
                }
                out
            })
            .collect();
        let mut out = Self { terms: BTreeMap::new(), floor };
        for part in parts {
            for (o, c) in part {
                out.add_term(o, &c);
            }
        }
        out
    }

    pub fn grade(&self) -> Grade {
        self.terms.values().fold(Grade::Zero, |g, a| g.join(a.grade()))
    }

    /// Two-sided inverse of `c d^M + (lower orders)` with `c` invertible.
    pub fn inverse(&self, trunc: &Truncation) -> Result<Self> {
        let top = self.top_order().ok_or_else(|| not_invertible("zero operator"))?;
        let lead = &self.terms[&top];
        if lead.known_is_zero() {
            return Err(not_invertible(format!("leading coefficient of {self} is unknown")));
        }
        let lead_inv = lead.inverse(trunc)?;
        let constant = lead_inv.is_polynomial() && lead_inv.top().map_or(true, |t| t <= 0);
        if self.terms.len() == 1 && self.floor.is_none() && (top == 0 || constant) {
            return Ok(Self::monomial(-top, lead_inv));
        }
        let mut floor = trunc.d_floor;
        if let Some(f) = self.floor {
            floor = floor.max(f - 2 * top);
        }
        let p0_inv = Self::d_pow(-top)
            .truncated_below(floor)
            .mul_with_floor(&Self::from_series(lead_inv), Some(floor));
        let mut rest = self.clone();
        rest.terms.remove(&top);
        // p = p0 (1 + q)
        let q = p0_inv.mul_with_floor(&rest, Some(floor + top));
        let neg_q = q.neg_ref();
        let mut sum = Self::one();
        let mut term = Self::one();
        loop {
            term = neg_q.mul_with_floor(&term, Some(floor + top));
            if term.terms.is_empty() {
                break;
            }
            sum.add_assign_ref(&term);
        }
        sum.truncate_below(floor + top);
        Ok(sum.mul_with_floor(&p0_inv, Some(floor)))
    }

    /// Slot-wise comparison on the common certified window.
    pub fn compare(&self, other: &Self) -> Comparison {
        let floor = max_floor(self.floor, other.floor);
        let mut orders: Vec<i64> = self.terms.keys().chain(other.terms.keys()).copied().collect();
        orders.sort_unstable();
        orders.dedup();
        let mut v_floor: Option<i64> = None;
        let mut cmp = Comparison::default();
        for r in orders {
            if floor.is_some_and(|f| r < f) {
                continue;
            }
            let a = self.coeff(r).unwrap();
            let b = other.coeff(r).unwrap();
            v_floor = max_floor(v_floor, max_floor(a.floor(), b.floor()));
            cmp.absorb(&[r], a.compare(&b));
        }
        let d = floor.map_or("exact".to_string(), |f| format!("d >= {f}"));
        let v = v_floor.map_or("exact".to_string(), |f| format!("v >= {f}"));
        cmp.window = format!("{d}; {v}");
        cmp
    }
}

impl Ring for Pdo {
    fn zero() -> Self {
        Pdo::zero()
    }
    fn one() -> Self {
        Pdo::one()
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
        Pdo::grade(self)
    }
}

impl Invertible for Pdo {
    fn inverse(&self, trunc: &Truncation) -> Result<Self> {
        Pdo::inverse(self, trunc)
    }
}

impl WindowEq for Pdo {
    fn compare_window(&self, other: &Self) -> Comparison {
        self.compare(other)
    }
}

impl fmt::Display for Pdo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (r, a) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match r {
                0 => write!(f, "[{a}]")?,
                _ => write!(f, "[{a}]*d^{r}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        if let Some(fl) = self.floor {
            write!(f, " + O(d^{})", fl - 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Pdo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pdo[{self}]")
    }
}
