//! The generating series `Ber(1 + wB)`.

use super::model::build_b;
use super::params::ModelParams;
use crate::error::Result;
use crate::ncmatrix::NCMatrix;
use crate::specseries::{phi, Pdo, VSeries, WSeries};
use crate::window::Comparison;

/// `Ber(1 + wB) = sum_r sum_s B_{r,s}(v) d_v^{r-s} w^r`.
#[derive(Clone, Debug)]
pub struct BetheExpansion {
    pub series: WSeries<Pdo>,
}

impl BetheExpansion {
    /// `B_{r,s}(v)`, or `None` outside the certified window.
    pub fn coeff(&self, r: i64, s: i64) -> Option<VSeries> {
        self.series.coeff(r)?.coeff(r - s)
    }

    /// Pairs `(r, s)` with a stored coefficient, `r <= r_max`.
    pub fn indices(&self, r_max: i64) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        for (r, c) in self.series.terms() {
            if r > r_max {
                break;
            }
            for (order, _) in c.terms() {
                out.push((r, r - order));
            }
        }
        out
    }
}

/// `1 + wB` over Laurent series in `w`.
pub fn affine_b(p: &ModelParams) -> Result<NCMatrix<WSeries<Pdo>>> {
    let b = build_b(p)?;
    Ok(NCMatrix::from_fn(b.parity().clone(), |i, j| {
        let unit = if i == j { Pdo::one() } else { Pdo::zero() };
        WSeries::from_terms([(0, unit), (1, b.get(i, j).clone())], None)
    }))
}

pub fn expand_bethe(p: &ModelParams) -> Result<BetheExpansion> {
    let series = affine_b(p)?.ber(&p.trunc)?;
    Ok(BetheExpansion { series: series.truncated_above(p.trunc.w_top) })
}

/// Compares `w^{m-n} Phi(Ber B)` with `Ber(1 + wB)` up to `w^{w_top}`.
pub fn phi_consistency(p: &ModelParams, w_top: i64) -> Result<Comparison> {
    let ber_b = build_b(p)?.ber(&p.trunc)?;
    let lhs = phi(&ber_b, w_top - p.super_dim()).shift(p.super_dim());
    let rhs = expand_bethe(p)?.series.truncated_above(w_top);
    Ok(lhs.compare(&rhs))
}
