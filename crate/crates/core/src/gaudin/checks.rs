//! Structural checks on the model matrices: Manin relations, Berezinian
//! invariance under reindexing and block factorisation.

use serde::Serialize;

use super::bethe::affine_b;
use super::duality::b_side_truncation;
use super::model::{build_b, build_bhat, build_g, build_ghat};
use super::params::ModelParams;
use crate::error::Result;
use crate::ncmatrix::{perm, ManinReport, NCMatrix};
use crate::ring::Truncation;
use crate::specseries::{Pdo, WSeries};
use crate::window::Comparison;

/// `1 + wA`; equal to `w` times the image of `A` under the shift
/// `v -> v + 1/w`, `d -> d + 1/w` when `A` has unit-lead diagonal entries.
pub fn affine_of(a: &NCMatrix<Pdo>) -> NCMatrix<WSeries<Pdo>> {
    NCMatrix::from_fn(a.parity().clone(), |i, j| {
        let unit = if i == j { Pdo::one() } else { Pdo::zero() };
        WSeries::from_terms([(0, unit), (1, a.get(i, j).clone())], None)
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedCheck {
    pub name: String,
    pub comparison: Comparison,
}

impl NamedCheck {
    pub fn holds(&self) -> bool {
        self.comparison.all_pass() && self.comparison.compared() > 0
    }
}

/// `Ber^{sigma(s)} sigma(B-hat) = Ber^s B-hat` for every adjacent
/// transposition, natively and for `1 + wB-hat` up to `w^{w_top}`.
pub fn ber_invariance(p: &ModelParams, w_top: i64) -> Result<Vec<NamedCheck>> {
    let bh = build_bhat(p);
    let n = bh.size();
    let native_trunc = b_side_truncation(p);
    let affine_trunc = Truncation { w_top, ..p.trunc };
    let base = bh.ber(&native_trunc)?;
    let aff = affine_of(&bh);
    let aff_base = aff.ber(&affine_trunc)?;
    let mut out = Vec::new();
    for t in 0..n.saturating_sub(1) {
        let sg = perm::transposition(n, t, t + 1);
        let native = bh.permute(&sg).ber(&native_trunc)?;
        out.push(NamedCheck { name: format!("native ({} {})", t + 1, t + 2), comparison: native.compare(&base) });
        let shifted = aff.permute(&sg).ber(&affine_trunc)?;
        out.push(NamedCheck {
            name: format!("affine ({} {})", t + 1, t + 2),
            comparison: shifted.compare(&aff_base),
        });
    }
    Ok(out)
}

/// Block factorisation at every split index against the quasi-minor product.
pub fn block_factorisation(p: &ModelParams, w_top: i64) -> Result<Vec<NamedCheck>> {
    let bh = build_bhat(p);
    let native_trunc = b_side_truncation(p);
    let affine_trunc = Truncation { w_top, ..p.trunc };
    let aff = affine_of(&bh);
    let base = bh.ber(&native_trunc)?;
    let aff_base = aff.ber(&affine_trunc)?;
    let mut out = Vec::new();
    for r in 1..bh.size() {
        let native = bh.block_ber(r, &native_trunc)?;
        out.push(NamedCheck { name: format!("native split {r}"), comparison: native.compare(&base) });
        let shifted = aff.block_ber(r, &affine_trunc)?;
        out.push(NamedCheck { name: format!("affine split {r}"), comparison: shifted.compare(&aff_base) });
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct ManinSummary {
    pub name: &'static str,
    pub report: ManinReport,
}

/// Manin checks of G, B, B-hat, G-hat and of the inverse of `1 + wB`.
pub fn manin_checks(p: &ModelParams, w_top: i64) -> Result<Vec<ManinSummary>> {
    let affine_trunc = Truncation { w_top, ..p.trunc };
    let inv = affine_b(p)?.affine_inverse(&affine_trunc)?;
    Ok(vec![
        ManinSummary { name: "G", report: build_g(p)?.is_manin() },
        ManinSummary { name: "B", report: build_b(p)?.is_manin() },
        ManinSummary { name: "B-hat", report: build_bhat(p).is_manin() },
        ManinSummary { name: "G-hat", report: build_ghat(p).is_manin() },
        ManinSummary { name: "(1 + wB)^-1", report: inv.is_manin() },
    ])
}

/// `[pi(e_ij), pi(e_ab)] = 0` for the two commuting actions on the Weyl
/// superalgebra; slots are `[i, j, a, b]`, 1-based.
pub fn classical_duality(m: usize, n: usize, k: usize) -> Comparison {
    let alg = crate::superweyl::SuperWeyl::new(m, n, k);
    let rows = m + n;
    let mut cmp = Comparison::new("exact");
    for i in 1..=rows {
        for j in 1..=rows {
            let e = alg.pi_glmn(i, j);
            for a in 1..=k {
                for b in 1..=k {
                    let pass = e.super_commutator(&alg.pi_glk(a, b)).is_ok_and(|c| c.is_zero());
                    cmp.push(vec![i as i64, j as i64, a as i64, b as i64], pass);
                }
            }
        }
    }
    cmp
}
