//! Coefficient tables of the two bordered Berezinians and their comparison.

use std::collections::BTreeMap;

use serde::Serialize;

use super::model::{build_bhat, build_ghat};
use super::params::ModelParams;
use crate::error::{AlgebraError, Result};
use crate::ring::Truncation;
use crate::specseries::Pdo;
use crate::superweyl::NOElement;
use crate::window::Comparison;

/// How many orders below `m - n` are compared by default.
pub const DEFAULT_DEPTH: i64 = 6;

/// Coefficients indexed by `(r, s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffTable {
    pub entries: BTreeMap<(i64, i64), NOElement>,
    pub window: String,
}

#[derive(Serialize)]
struct Entry<'a> {
    r: i64,
    s: i64,
    text: String,
    value: &'a NOElement,
}

impl Serialize for CoeffTable {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let entries: Vec<Entry> = self
            .entries
            .iter()
            .map(|(&(r, s), value)| Entry { r, s, text: value.to_string(), value })
            .collect();
        let mut st = ser.serialize_struct("CoeffTable", 2)?;
        st.serialize_field("window", &self.window)?;
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

impl CoeffTable {
    pub fn get(&self, r: i64, s: i64) -> Option<&NOElement> {
        self.entries.get(&(r, s))
    }

    pub fn has_odd_generators(&self) -> bool {
        self.entries.values().any(NOElement::has_odd_generators)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    /// `b_{r,s}`: coefficient of `v^r d_v^s` in the bordered Berezinian of B.
    pub b: CoeffTable,
    /// `g_{r,s}`: coefficient of `u^r d_u^s` in the bordered Berezinian of G.
    pub g: CoeffTable,
    /// Slots `[r, s]` comparing `b_{r,s}` with `g_{s,r}`.
    pub comparison: Comparison,
}

impl DualityReport {
    pub fn holds(&self) -> bool {
        self.comparison.all_pass() && self.comparison.compared() > 0
    }
}

/// Spectral floor used for the bordered B. Only degrees `0..=k` of the
/// result are read, so the expansion need not go as deep as on the G side.
pub fn b_side_truncation(p: &ModelParams) -> Truncation {
    Truncation { v_floor: p.trunc.v_floor.max(-(p.k as i64) - 2), ..p.trunc }
}

/// `Ber B-hat = (v - z_1)...(v - z_k) Ber B`.
pub fn ber_bhat(p: &ModelParams) -> Result<Pdo> {
    build_bhat(p).ber(&b_side_truncation(p))
}

/// `Ber G-hat`, the column determinant of G with the Lambda prefactor.
pub fn ber_ghat(p: &ModelParams) -> Result<Pdo> {
    build_ghat(p).ber(&p.trunc)
}

fn slot(p: &Pdo, degree: i64, order: i64, side: &str) -> Result<NOElement> {
    p.slot(order, degree).ok_or_else(|| {
        AlgebraError::WindowTooShallow(format!(
            "{side}: degree {degree}, order {order} is not certified (order floor {:?})",
            p.floor()
        ))
    })
}

/// Compares `b_{r,s}` with `g_{s,r}` for `r` in `0..=k` and
/// `s` in `m-n-depth ..= m-n`.
pub fn duality_check(p: &ModelParams, depth: i64) -> Result<DualityReport> {
    let (bb, gg) = rayon::join(|| ber_bhat(p), || ber_ghat(p));
    duality_from(p, &bb?, &gg?, depth)
}

/// Same as [`duality_check`] for precomputed Berezinians.
pub fn duality_from(p: &ModelParams, bb: &Pdo, gg: &Pdo, depth: i64) -> Result<DualityReport> {
    let top = p.super_dim();
    let lo = top - depth;
    let window = format!("r in 0..={}, s in {lo}..={top}", p.k);
    let mut b = CoeffTable { entries: BTreeMap::new(), window: window.clone() };
    let mut g = CoeffTable { entries: BTreeMap::new(), window: format!("r in {lo}..={top}, s in 0..={}", p.k) };
    let mut comparison = Comparison::new(window);
    for r in 0..=p.k as i64 {
        for s in lo..=top {
            let bv = slot(bb, r, s, "b-side")?;
            let gv = slot(gg, s, r, "g-side")?;
            comparison.push(vec![r, s], bv == gv);
            b.entries.insert((r, s), bv);
            g.entries.insert((s, r), gv);
        }
    }
    Ok(DualityReport { b, g, comparison })
}
