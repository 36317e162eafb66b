//! The action of the Weyl superalgebra on polynomials in even and Grassmann
//! variables, restricted to finite bi-weight spaces.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::gaudin::{expand_bethe, ModelParams};
use crate::rational::Rational;
use crate::superweyl::{Generator, Kind, NOElement, SuperWeyl};

/// `prod x_{i,a}^{e_{i,a}}` with factors in row-major order `(i, a)`.
/// Exponents on odd rows are 0 or 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VMonomial {
    /// `(rows, k)` exponent table, row-major.
    exps: Vec<u16>,
    m: usize,
    k: usize,
}

impl VMonomial {
    pub fn one(alg: &SuperWeyl) -> Self {
        Self { exps: vec![0; alg.rows() * alg.k], m: alg.m, k: alg.k }
    }

    /// From a `rows x k` table; odd rows must have entries at most 1.
    pub fn from_table(alg: &SuperWeyl, table: &[Vec<u16>]) -> Result<Self> {
        if table.len() != alg.rows() || table.iter().any(|r| r.len() != alg.k) {
            return Err(AlgebraError::Dimension(format!("expected a {}x{} table", alg.rows(), alg.k)));
        }
        if table[alg.m..].iter().flatten().any(|&e| e > 1) {
            return Err(AlgebraError::InvalidParams("odd exponents must be 0 or 1".into()));
        }
        Ok(Self { exps: table.concat(), m: alg.m, k: alg.k })
    }

    fn idx(&self, i: usize, a: usize) -> usize {
        (i - 1) * self.k + (a - 1)
    }

    /// Exponent of `x_{i,a}`, 1-based.
    pub fn exponent(&self, i: usize, a: usize) -> u16 {
        self.exps[self.idx(i, a)]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    /// Sign of moving an odd letter at `(i, a)` to the front.
    fn odd_prefix_sign(&self, i: usize, a: usize) -> i64 {
        let start = self.m * self.k;
        let count = self.exps[start..self.idx(i, a)].iter().filter(|&&e| e == 1).count();
        if count % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `g . self` as a coefficient and monomial; `None` when it vanishes.
    fn apply_letter(&self, g: Generator) -> Option<(i64, Self)> {
        let (i, a) = (g.site.row as usize, g.site.col as usize);
        let idx = self.idx(i, a);
        let e = self.exps[idx];
        let mut out = self.clone();
        match (g.kind, g.site.odd) {
            (Kind::X, false) => {
                out.exps[idx] += 1;
                Some((1, out))
            }
            (Kind::D, false) => {
                if e == 0 {
                    return None;
                }
                out.exps[idx] -= 1;
                Some((e as i64, out))
            }
            (Kind::X, true) => {
                if e == 1 {
                    return None;
                }
                out.exps[idx] = 1;
                Some((self.odd_prefix_sign(i, a), out))
            }
            (Kind::D, true) => {
                if e == 0 {
                    return None;
                }
                out.exps[idx] = 0;
                Some((self.odd_prefix_sign(i, a), out))
            }
        }
    }

    /// Column degrees `lambda_a` and row degrees `mu_i`.
    pub fn weights(&self) -> (Vec<u32>, Vec<u32>) {
        let rows = self.exps.len() / self.k;
        let lambda = (1..=self.k).map(|a| (1..=rows).map(|i| self.exponent(i, a) as u32).sum()).collect();
        let mu = (1..=rows).map(|i| (1..=self.k).map(|a| self.exponent(i, a) as u32).sum()).collect();
        (lambda, mu)
    }
}

impl fmt::Debug for VMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.exps.len() / self.k;
        let mut first = true;
        for i in 1..=rows {
            for a in 1..=self.k {
                let e = self.exponent(i, a);
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "x({i},{a})")?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// A finite rational combination of monomials.
pub type VVector = BTreeMap<VMonomial, Rational>;

fn add_to(v: &mut VVector, mono: VMonomial, c: Rational) {
    let entry = v.entry(mono.clone()).or_insert(Rational::ZERO);
    *entry = &*entry + &c;
    if entry.is_zero() {
        v.remove(&mono);
    }
}

/// `p . mono`: derivations act as superderivations, coordinates by left
/// multiplication; letters of each word act right to left.
pub fn apply_to_v(p: &NOElement, mono: &VMonomial) -> VVector {
    let mut out = VVector::new();
    'terms: for (word, c) in p.terms() {
        let mut cur = (Rational::from_int(1), mono.clone());
        for g in word.letters().into_iter().rev() {
            match cur.1.apply_letter(g) {
                Some((s, next)) => cur = (&cur.0 * &Rational::from_int(s), next),
                None => continue 'terms,
            }
        }
        add_to(&mut out, cur.1, &cur.0 * c);
    }
    out
}

/// Monomials with column degrees `lambda` and row degrees `mu`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightBasis {
    pub lambda: Vec<u32>,
    pub mu: Vec<u32>,
    pub monomials: Vec<VMonomial>,
}

impl WeightBasis {
    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn position(&self, mono: &VMonomial) -> Option<usize> {
        self.monomials.binary_search(mono).ok()
    }
}

/// Complete monomial basis of the `(lambda, mu)` weight space; empty when the
/// degrees are inconsistent.
pub fn weight_basis(alg: &SuperWeyl, lambda: &[u32], mu: &[u32]) -> Result<WeightBasis> {
    if lambda.len() != alg.k || mu.len() != alg.rows() {
        return Err(AlgebraError::Dimension("weight lengths do not match the sizes".into()));
    }
    let mut monomials = Vec::new();
    if lambda.iter().sum::<u32>() == mu.iter().sum::<u32>() {
        let mut table = vec![vec![0u16; alg.k]; alg.rows()];
        let mut col_left: Vec<u32> = lambda.to_vec();
        fill_row(alg, 0, mu, &mut col_left, &mut table, &mut monomials);
    }
    monomials.sort();
    Ok(WeightBasis { lambda: lambda.to_vec(), mu: mu.to_vec(), monomials })
}

fn fill_row(
    alg: &SuperWeyl,
    i: usize,
    mu: &[u32],
    col_left: &mut Vec<u32>,
    table: &mut Vec<Vec<u16>>,
    out: &mut Vec<VMonomial>,
) {
    if i == alg.rows() {
        if col_left.iter().all(|&c| c == 0) {
            out.push(VMonomial::from_table(alg, table).expect("valid table"));
        }
        return;
    }
    let cap = if i < alg.m { u32::MAX } else { 1 };
    fill_cell(alg, i, 0, mu[i], cap, mu, col_left, table, out);
}

#[allow(clippy::too_many_arguments)]
fn fill_cell(
    alg: &SuperWeyl,
    i: usize,
    a: usize,
    left: u32,
    cap: u32,
    mu: &[u32],
    col_left: &mut Vec<u32>,
    table: &mut Vec<Vec<u16>>,
    out: &mut Vec<VMonomial>,
) {
    if a == alg.k {
        if left == 0 {
            fill_row(alg, i + 1, mu, col_left, table, out);
        }
        return;
    }
    for e in 0..=left.min(cap).min(col_left[a]) {
        table[i][a] = e as u16;
        col_left[a] -= e;
        fill_cell(alg, i, a + 1, left - e, cap, mu, col_left, table, out);
        col_left[a] += e;
    }
    table[i][a] = 0;
}

/// Dense rational matrix, row-major.
pub type RatMatrix = Vec<Vec<Rational>>;

/// Matrix of `p` on the basis; column `c` is the image of basis vector `c`.
pub fn operator_matrix(p: &NOElement, basis: &WeightBasis) -> Result<RatMatrix> {
    let d = basis.dim();
    let cols: Vec<Result<Vec<Rational>>> = basis
        .monomials
        .par_iter()
        .map(|mono| {
            let mut col = vec![Rational::ZERO; d];
            for (img, c) in apply_to_v(p, mono) {
                let r = basis.position(&img).ok_or_else(|| {
                    AlgebraError::NotWeightPreserving(format!("{p} sends {mono:?} to {img:?}"))
                })?;
                col[r] = c;
            }
            Ok(col)
        })
        .collect();
    let mut out = vec![vec![Rational::ZERO; d]; d];
    for (c, col) in cols.into_iter().enumerate() {
        for (r, x) in col?.into_iter().enumerate() {
            out[r][c] = x;
        }
    }
    Ok(out)
}

pub fn mat_mul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let n = a.len();
    let mut out = vec![vec![Rational::ZERO; n]; n];
    for i in 0..n {
        for l in 0..n {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] = &out[i][j] + &(&a[i][l] * &b[l][j]);
            }
        }
    }
    out
}

pub fn commutes(a: &RatMatrix, b: &RatMatrix) -> bool {
    mat_mul(a, b) == mat_mul(b, a)
}

/// Every `(lambda, mu)` pair of total degree `d`.
pub fn weights_of_degree(alg: &SuperWeyl, d: u32) -> Vec<(Vec<u32>, Vec<u32>)> {
    let lambdas = compositions(d, alg.k);
    let mus = compositions(d, alg.rows());
    let mut out = Vec::new();
    for l in &lambdas {
        for m in &mus {
            out.push((l.clone(), m.clone()));
        }
    }
    out
}

fn compositions(d: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=d {
        for mut rest in compositions(d - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// One Bethe coefficient: the `v^degree` part of `B_{r,s}(v)`.
#[derive(Clone, Debug, Serialize)]
pub struct BetheCoefficient {
    pub r: i64,
    pub s: i64,
    pub degree: i64,
    pub value: NOElement,
}

/// Coefficients of `B_{r,s}(v)` for `1 <= r <= r_max` and `v`-degrees
/// `>= -depth`, excluding scalars.
pub fn bethe_coefficients(p: &ModelParams, r_max: i64, depth: i64) -> Result<Vec<BetheCoefficient>> {
    let exp = expand_bethe(p)?;
    if exp.series.ceiling().is_some_and(|c| c < r_max) {
        return Err(AlgebraError::WindowTooShallow(format!("w-ceiling below {r_max}")));
    }
    let mut out = Vec::new();
    for (r, s) in exp.indices(r_max) {
        let series = exp.coeff(r, s).expect("stored index");
        if series.floor().is_some_and(|f| f > -depth) {
            return Err(AlgebraError::WindowTooShallow(format!(
                "B_{{{r},{s}}} certified only to v^{}",
                series.floor().unwrap()
            )));
        }
        for (degree, c) in series.terms() {
            if degree >= -depth && c.as_scalar().is_none() {
                out.push(BetheCoefficient { r, s, degree, value: c.clone() });
            }
        }
    }
    Ok(out)
}

/// Outcome on one bi-weight space.
#[derive(Clone, Debug, Serialize)]
pub struct SpaceResult {
    pub lambda: Vec<u32>,
    pub mu: Vec<u32>,
    pub dim: usize,
    pub pairs: usize,
    /// Indices into the coefficient list of each non-commuting pair.
    pub failures: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutativityReport {
    pub coefficients: Vec<BetheCoefficient>,
    pub spaces: Vec<SpaceResult>,
}

impl CommutativityReport {
    pub fn pairs_checked(&self) -> usize {
        self.spaces.iter().map(|s| s.pairs).sum()
    }

    pub fn holds(&self) -> bool {
        self.spaces.iter().all(|s| s.failures.is_empty()) && self.pairs_checked() > 0
    }
}

/// Pairwise commutation of Bethe coefficients on every nonzero bi-weight
/// space of total degree at most `max_degree`.
pub fn commutativity_check(
    p: &ModelParams,
    r_max: i64,
    depth: i64,
    max_degree: u32,
) -> Result<CommutativityReport> {
    let alg = p.algebra();
    let coefficients = bethe_coefficients(p, r_max, depth)?;
    let mut bases = Vec::new();
    for d in 0..=max_degree {
        for (l, m) in weights_of_degree(&alg, d) {
            let b = weight_basis(&alg, &l, &m)?;
            if b.dim() > 0 {
                bases.push(b);
            }
        }
    }
    let spaces: Vec<Result<SpaceResult>> = bases
        .par_iter()
        .map(|basis| {
            let mats: Vec<RatMatrix> =
                coefficients.iter().map(|c| operator_matrix(&c.value, basis)).collect::<Result<_>>()?;
            let mut failures = Vec::new();
            let mut pairs = 0;
            for a in 0..mats.len() {
                for b in a + 1..mats.len() {
                    pairs += 1;
                    if !commutes(&mats[a], &mats[b]) {
                        failures.push((a, b));
                    }
                }
            }
            Ok(SpaceResult { lambda: basis.lambda.clone(), mu: basis.mu.clone(), dim: basis.dim(), pairs, failures })
        })
        .collect();
    Ok(CommutativityReport { coefficients, spaces: spaces.into_iter().collect::<Result<_>>()? })
}
