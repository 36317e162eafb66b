use std::fmt;

use rayon::prelude::*;

use super::perm;
use crate::error::{AlgebraError, Result};
use crate::rational::Rational;
use crate::ring::{Invertible, Ring, Truncation, WindowEq};
use crate::specseries::{Pdo, WSeries};
use crate::superweyl::{Parity, ParitySequence};
use crate::window::Comparison;

/// A square matrix over a (super)ring, tagged with a parity sequence.
#[derive(Clone, PartialEq)]
pub struct NCMatrix<R> {
    size: usize,
    entries: Vec<R>,
    parity: ParitySequence,
}

/// First quadruple `(i, j, p, q)` (1-based) at which the Manin relation fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManinViolation {
    pub quadruple: (usize, usize, usize, usize),
}

/// Outcome of a Manin check.
#[derive(Clone, Debug)]
pub struct ManinReport {
    pub violation: Option<ManinViolation>,
    /// Number of quadruples examined.
    pub checked: usize,
    /// Number of coefficient slots compared over all quadruples.
    pub slots: usize,
}

impl ManinReport {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

impl<R: Ring> NCMatrix<R> {
    pub fn from_fn(parity: ParitySequence, f: impl Fn(usize, usize) -> R) -> Self {
        let size = parity.len();
        let mut entries = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                entries.push(f(i, j));
            }
        }
        Self { size, entries, parity }
    }

    /// Rows given as nested vectors.
    pub fn from_rows(parity: ParitySequence, rows: Vec<Vec<R>>) -> Result<Self> {
        let size = parity.len();
        if rows.len() != size || rows.iter().any(|r| r.len() != size) {
            return Err(AlgebraError::Dimension(format!(
                "expected a {size}x{size} matrix for parity {parity}"
            )));
        }
        Ok(Self { size, entries: rows.into_iter().flatten().collect(), parity })
    }

    pub fn identity(parity: ParitySequence) -> Self {
        Self::from_fn(parity, |i, j| if i == j { R::one() } else { R::zero() })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn parity(&self) -> &ParitySequence {
        &self.parity
    }

    /// Entry `(i, j)`, 0-based.
    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.entries[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: R) {
        self.entries[i * self.size + j] = value;
    }

    pub fn with_parity(mut self, parity: ParitySequence) -> Result<Self> {
        if parity.len() != self.size {
            return Err(AlgebraError::Dimension(format!(
                "parity {parity} does not fit a {0}x{0} matrix",
                self.size
            )));
        }
        self.parity = parity;
        Ok(self)
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S + Sync + Send) -> NCMatrix<S> {
        NCMatrix {
            size: self.size,
            entries: self.entries.par_iter().map(f).collect(),
            parity: self.parity.clone(),
        }
    }

    /// Principal submatrix on the index range.
    pub fn block(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Vec<Vec<R>> {
        rows.map(|i| cols.clone().map(|j| self.get(i, j).clone()).collect()).collect()
    }

    pub fn principal(&self, range: std::ops::Range<usize>) -> Self {
        let rows = self.block(range.clone(), range.clone());
        Self::from_rows(self.parity.slice(range), rows).expect("square block")
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            size: self.size,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect(),
            parity: self.parity.clone(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|a| a.scale(c))
    }

    /// Row-by-column product; no Koszul signs enter for matrices of a
    /// declared parity.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.size;
        let entries = (0..n * n)
            .into_par_iter()
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                let mut acc = R::zero();
                for l in 0..n {
                    let (a, b) = (self.get(i, l), other.get(l, j));
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(b));
                }
                acc
            })
            .collect();
        Self { size: n, entries, parity: self.parity.clone() }
    }

    /// Column determinant: `sum sgn(s) a_{s(1),1} ... a_{s(n),n}`, factors in
    /// column order.
    pub fn cdet(&self) -> R {
        let perms = perm::permutations(self.size);
        let terms: Vec<R> = perms
            .par_iter()
            .map(|p| {
                let mut acc = R::one().scale(&Rational::from_int(perm::sign(p)));
                for (col, &row) in p.iter().enumerate() {
                    let e = self.get(row, col);
                    if e.is_zero() {
                        return R::zero();
                    }
                    acc = acc.mul(e);
                }
                acc
            })
            .collect();
        terms.iter().fold(R::zero(), |acc, t| acc.add(t))
    }

    /// Row determinant: `sum sgn(s) a_{1,s(1)} ... a_{n,s(n)}`, factors in
    /// row order.
    pub fn rdet(&self) -> R {
        let perms = perm::permutations(self.size);
        let terms: Vec<R> = perms
            .par_iter()
            .map(|p| {
                let mut acc = R::one().scale(&Rational::from_int(perm::sign(p)));
                for (row, &col) in p.iter().enumerate() {
                    let e = self.get(row, col);
                    if e.is_zero() {
                        return R::zero();
                    }
                    acc = acc.mul(e);
                }
                acc
            })
            .collect();
        terms.iter().fold(R::zero(), |acc, t| acc.add(t))
    }

    /// `sigma(A) = (a_{sigma^{-1}(i), sigma^{-1}(j)})` with parity `sigma(s)`;
    /// `sigma` is the image list `sigma[j] = sigma(j)`, 0-based.
    pub fn permute(&self, sigma: &[usize]) -> Self {
        let inv = perm::inverse(sigma);
        let parity = self.parity.permute(sigma);
        Self::from_fn(parity, |i, j| self.get(inv[i], inv[j]).clone())
    }

    /// Parity `i^s + j^s` expected of entry `(i, j)`.
    pub fn entry_parity(&self, i: usize, j: usize) -> Parity {
        self.parity.parity(i) + self.parity.parity(j)
    }

    /// Whether every entry is homogeneous of the parity its position demands.
    pub fn has_declared_parity(&self) -> bool {
        (0..self.size).all(|i| (0..self.size).all(|j| self.get(i, j).grade().admits(self.entry_parity(i, j))))
    }
}

impl<R: Ring + WindowEq> NCMatrix<R> {
    /// Checks `[a_ij, a_pq] = (-1)^{ij + ip + jp} [a_pj, a_iq]` for all
    /// quadruples, on the common certified window of both sides.
    pub fn is_manin(&self) -> ManinReport {
        let n = self.size;
        if !self.has_declared_parity() {
            let bad = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .find(|&(i, j)| !self.get(i, j).grade().admits(self.entry_parity(i, j)))
                .unwrap();
            return ManinReport {
                violation: Some(ManinViolation { quadruple: (bad.0 + 1, bad.1 + 1, bad.0 + 1, bad.1 + 1) }),
                checked: 0,
                slots: 0,
            };
        }
        let quads: Vec<(usize, usize, usize, usize)> = (0..n.pow(4))
            .map(|x| (x / n.pow(3), (x / n.pow(2)) % n, (x / n) % n, x % n))
            .collect();
        let p = |i: usize| self.parity.parity(i).is_odd() as u8;
        let results: Vec<(bool, usize)> = quads
            .par_iter()
            .map(|&(i, j, a, b)| {
                let lhs = self.get(i, j).super_commutator(self.get(a, b)).expect("homogeneous");
                let rhs = self.get(a, j).super_commutator(self.get(i, b)).expect("homogeneous");
                let odd = (p(i) * p(j) + p(i) * p(a) + p(j) * p(a)) % 2 == 1;
                let rhs = if odd { rhs.neg() } else { rhs };
                let cmp = lhs.compare_window(&rhs);
                (cmp.all_pass(), cmp.compared())
            })
            .collect();
        let violation = results
            .iter()
            .position(|(ok, _)| !ok)
            .map(|x| {
                let (i, j, a, b) = quads[x];
                ManinViolation { quadruple: (i + 1, j + 1, a + 1, b + 1) }
            });
        ManinReport { violation, checked: quads.len(), slots: results.iter().map(|r| r.1).sum() }
    }

    /// Entry-wise comparison on certified windows.
    pub fn compare(&self, other: &Self) -> Comparison {
        let mut cmp = Comparison::default();
        for i in 0..self.size {
            for j in 0..self.size {
                let c = self.get(i, j).compare_window(other.get(i, j));
                if cmp.window.is_empty() {
                    cmp.window = c.window.clone();
                }
                cmp.absorb(&[i as i64 + 1, j as i64 + 1], c);
            }
        }
        cmp
    }
}

impl<R: Invertible> NCMatrix<R> {
    /// Principal quasi-minors `d_1, ..., d_n` by successive Schur complements.
    pub fn quasi_minors(&self, trunc: &Truncation) -> Result<Vec<R>> {
        let n = self.size;
        let mut rows: Vec<Vec<R>> = self.block(0..n, 0..n);
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let pivot = rows[i][i].clone();
            if i + 1 == n {
                out.push(pivot);
                break;
            }
            let inv = pivot.inverse(trunc)?;
            out.push(pivot);
            let (head, tail) = rows.split_at_mut(i + 1);
            let pivot_row = &head[i];
            tail.par_iter_mut().for_each(|row| {
                if row[i].is_zero() {
                    return;
                }
                let factor = row[i].mul(&inv);
                for c in i + 1..n {
                    if pivot_row[c].is_zero() {
                        continue;
                    }
                    row[c] = row[c].sub(&factor.mul(&pivot_row[c]));
                }
            });
        }
        Ok(out)
    }

    /// Two-sided inverse by Gauss-Jordan elimination with principal pivots.
    pub fn inverse(&self, trunc: &Truncation) -> Result<Self> {
        let n = self.size;
        let mut a = self.block(0..n, 0..n);
        let mut b = Self::identity(self.parity.clone()).block(0..n, 0..n);
        for c in 0..n {
            let inv = a[c][c].inverse(trunc)?;
            for col in 0..n {
                a[c][col] = inv.mul(&a[c][col]);
                b[c][col] = inv.mul(&b[c][col]);
            }
            let (pa, pb) = (a[c].clone(), b[c].clone());
            a.par_iter_mut().zip(b.par_iter_mut()).enumerate().for_each(|(r, (ra, rb))| {
                if r == c || ra[c].is_zero() {
                    return;
                }
                let f = ra[c].clone();
                for col in 0..n {
                    if !pa[col].is_zero() {
                        ra[col] = ra[col].sub(&f.mul(&pa[col]));
                    }
                    if !pb[col].is_zero() {
                        rb[col] = rb[col].sub(&f.mul(&pb[col]));
                    }
                }
            });
        }
        Self::from_rows(self.parity.clone(), b)
    }

    /// `d_i = a_ii - (row i | cols < i) W^{-1} (col i | rows < i)` with `W` the
    /// leading `(i-1)x(i-1)` block; `i` is 1-based.
    pub fn quasi_minor(&self, i: usize, trunc: &Truncation) -> Result<R> {
        if i == 0 || i > self.size {
            return Err(AlgebraError::Dimension(format!("no quasi-minor {i} of a {0}x{0} matrix", self.size)));
        }
        let r = i - 1;
        if r == 0 {
            return Ok(self.get(0, 0).clone());
        }
        let w_inv = self.principal(0..r).inverse(trunc)?;
        let mut acc = self.get(r, r).clone();
        for p in 0..r {
            if self.get(r, p).is_zero() {
                continue;
            }
            for q in 0..r {
                let t = self.get(r, p).mul(w_inv.get(p, q));
                if t.is_zero() || self.get(q, r).is_zero() {
                    continue;
                }
                acc = acc.sub(&t.mul(self.get(q, r)));
            }
        }
        Ok(acc)
    }

    /// `d_1^{s_1} ... d_n^{s_n}` for the matrix's own parity.
    pub fn ber(&self, trunc: &Truncation) -> Result<R> {
        let ds = self.quasi_minors(trunc)?;
        let mut acc = R::one();
        for (i, d) in ds.iter().enumerate() {
            let f = if self.parity.sign(i) == 1 { d.clone() } else { d.inverse(trunc)? };
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    /// Berezinian for an explicitly supplied parity sequence.
    pub fn ber_parity(&self, s: &ParitySequence, trunc: &Truncation) -> Result<R> {
        self.clone().with_parity(s.clone())?.ber(trunc)
    }

    /// Schur complement `Z - Y W^{-1} X` for the split after `r` indices.
    pub fn schur_complement(&self, r: usize, trunc: &Truncation) -> Result<Self> {
        let n = self.size;
        let w_inv = self.principal(0..r).inverse(trunc)?;
        let parity = self.parity.slice(r..n);
        let y_winv: Vec<Vec<R>> = (r..n)
            .map(|i| {
                (0..r)
                    .map(|q| {
                        (0..r).fold(R::zero(), |acc, p| {
                            let a = self.get(i, p);
                            if a.is_zero() {
                                acc
                            } else {
                                acc.add(&a.mul(w_inv.get(p, q)))
                            }
                        })
                    })
                    .collect()
            })
            .collect();
        Ok(Self::from_fn(parity, |i, j| {
            let mut acc = self.get(r + i, r + j).clone();
            for (q, t) in y_winv[i].iter().enumerate() {
                let x = self.get(q, r + j);
                if t.is_zero() || x.is_zero() {
                    continue;
                }
                acc = acc.sub(&t.mul(x));
            }
            acc
        }))
    }

    /// `Ber W x Ber (Z - Y W^{-1} X)` for the split after `r` indices.
    pub fn block_ber(&self, r: usize, trunc: &Truncation) -> Result<R> {
        if r > self.size {
            return Err(AlgebraError::Dimension(format!("split {r} exceeds size {}", self.size)));
        }
        if r == 0 || r == self.size {
            return self.ber(trunc);
        }
        let left = self.principal(0..r).ber(trunc)?;
        let right = self.schur_complement(r, trunc)?.ber(trunc)?;
        Ok(left.mul(&right))
    }

    /// `cdet` of the even block times `rdet` of the odd block of the inverse;
    /// requires standard parity.
    pub fn ber_standard(&self, trunc: &Truncation) -> Result<R> {
        let m = self.parity.m();
        if self.parity != ParitySequence::standard(m, self.parity.n()) {
            return Err(AlgebraError::InvalidParams(format!("parity {} is not standard", self.parity)));
        }
        let even = self.principal(0..m).cdet();
        if m == self.size {
            return Ok(even);
        }
        let odd = self.inverse(trunc)?.principal(m..self.size).rdet();
        Ok(even.mul(&odd))
    }
}

impl NCMatrix<WSeries<Pdo>> {
    /// Inverse of an affine matrix `1 + M`, `M = O(w)`, by the geometric series.
    pub fn affine_inverse(&self, trunc: &Truncation) -> Result<Self> {
        let n = self.size;
        let mut m = self.clone();
        for i in 0..n {
            for j in 0..n {
                let e = self.get(i, j);
                if e.low().is_some_and(|l| l < 0) {
                    return Err(AlgebraError::NotAffine(format!("entry ({},{}) has a pole in w", i + 1, j + 1)));
                }
                let c0 = e.coeff(0).ok_or_else(|| AlgebraError::NotAffine("entry not certified at w^0".into()))?;
                let expected = if i == j { Pdo::one() } else { Pdo::zero() };
                if c0 != expected {
                    return Err(AlgebraError::NotAffine(format!(
                        "entry ({},{}) is not {} at w^0",
                        i + 1,
                        j + 1,
                        if i == j { 1 } else { 0 }
                    )));
                }
                let mut rest = e.sub(&WSeries::constant(expected));
                rest.truncate_above(trunc.w_top);
                m.set(i, j, rest);
            }
        }
        let neg = m.scale(&Rational::from_int(-1));
        let mut sum = Self::identity(self.parity.clone());
        let mut term = Self::identity(self.parity.clone());
        for _ in 0..trunc.w_top {
            term = term.mul(&neg);
            sum = sum.add(&term);
        }
        Ok(sum.map(|e| e.clone().truncated_above(trunc.w_top)))
    }
}

impl<R: Ring> fmt::Debug for NCMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "NCMatrix {0}x{0} parity {1}", self.size, self.parity)?;
        for i in 0..self.size {
            for j in 0..self.size {
                writeln!(f, "  ({},{}) {:?}", i + 1, j + 1, self.get(i, j))?;
            }
        }
        Ok(())
    }
}
