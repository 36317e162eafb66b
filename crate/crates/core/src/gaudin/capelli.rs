//! Combinatorial closed forms of the column determinant and the bordered
//! Berezinian.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::model::resolvent;
use super::params::ModelParams;
use crate::error::{AlgebraError, Result};
use crate::ncmatrix::perm;
use crate::rational::{factorial, Rational};
use crate::specseries::{Pdo, VSeries};
use crate::superweyl::{normal_order_symbol, Generator, NOElement, SuperWeyl};

/// A function `j: {1..k} -> {0..m+n}` vanishing exactly off its domain,
/// with at most one preimage for every even value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JFunction {
    /// `values[a-1] = j(a)`, `0` off the domain.
    pub values: Vec<usize>,
}

impl JFunction {
    /// Domain `a_1 < ... < a_l`, 1-based.
    pub fn domain(&self) -> Vec<usize> {
        (1..=self.values.len()).filter(|&a| self.values[a - 1] != 0).collect()
    }

    /// `(j(a_1), ..., j(a_l))`
    pub fn image(&self) -> Vec<usize> {
        self.values.iter().copied().filter(|&v| v != 0).collect()
    }

    /// `|j^{-1}(i)|` for `i = 1..rows`.
    pub fn fibre_sizes(&self, rows: usize) -> Vec<usize> {
        let mut out = vec![0; rows];
        for v in self.image() {
            out[v - 1] += 1;
        }
        out
    }

    /// `x_{j(a_1),a_1} ... x_{j(a_l),a_l}`
    pub fn x_letters(&self, alg: &SuperWeyl) -> Vec<Generator> {
        self.domain().into_iter().map(|a| alg.x_gen(self.values[a - 1], a)).collect()
    }

    pub fn d_letters(&self, alg: &SuperWeyl) -> Vec<Generator> {
        self.domain().into_iter().map(|a| alg.d_gen(self.values[a - 1], a)).collect()
    }
}

/// All subsets of `{1..k}` as sorted 1-based lists, by size then lexicographically.
pub fn subsets(k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0u32..1 << k)
        .map(|mask| (1..=k).filter(|&a| mask & (1 << (a - 1)) != 0).collect())
        .collect();
    out.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

/// The set of admissible functions with domain `domain`.
pub fn enumerate_j(domain: &[usize], m: usize, n: usize, k: usize) -> Vec<JFunction> {
    let rows = m + n;
    let mut out = Vec::new();
    let mut values = vec![0usize; k];
    fn rec(
        pos: usize,
        domain: &[usize],
        m: usize,
        rows: usize,
        values: &mut Vec<usize>,
        out: &mut Vec<JFunction>,
    ) {
        if pos == domain.len() {
            out.push(JFunction { values: values.clone() });
            return;
        }
        let a = domain[pos];
        for i in 1..=rows {
            if i <= m && domain[..pos].iter().any(|&b| values[b - 1] == i) {
                continue;
            }
            values[a - 1] = i;
            rec(pos + 1, domain, m, rows, values, out);
        }
        values[a - 1] = 0;
    }
    if rows > 0 || domain.is_empty() {
        rec(0, domain, m, rows, &mut values, &mut out);
    }
    out
}

/// `sum_s C(l,s) C(m,s) s! n^{l-s}`
pub fn j_count(l: usize, m: usize, n: usize) -> u128 {
    let mut total = 0u128;
    for s in 0..=l.min(m) {
        let c = |a: usize, b: usize| -> u128 { (0..b).fold(1u128, |acc, t| acc * (a - t) as u128 / (t + 1) as u128) };
        let fact: u128 = (1..=s as u128).product();
        total += c(l, s) * c(m, s) * fact * (n as u128).pow((l - s) as u32);
    }
    total
}

fn equivalent(j1: &JFunction, j2: &JFunction) -> bool {
    j1.values.len() == j2.values.len() && {
        let mut a = j1.image();
        let mut b = j2.image();
        a.sort_unstable();
        b.sort_unstable();
        a == b && j1.domain() == j2.domain()
    }
}

/// The permutation of positions `0..l` sending each fibre of `j2` increasingly
/// onto the matching fibre of `j1`, so that `j1(a_{sigma(s)}) = j2(a_s)`.
pub fn sigma(j1: &JFunction, j2: &JFunction) -> Result<Vec<usize>> {
    if !equivalent(j1, j2) {
        return Err(AlgebraError::NotEquivalent(format!("{:?} vs {:?}", j1.values, j2.values)));
    }
    let (im1, im2) = (j1.image(), j2.image());
    let mut fibres: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (s, &i) in im1.iter().enumerate() {
        fibres.entry(i).or_default().push(s);
    }
    let mut used: BTreeMap<usize, usize> = BTreeMap::new();
    Ok(im2
        .iter()
        .map(|&i| {
            let t = used.entry(i).or_insert(0);
            *t += 1;
            fibres[&i][*t - 1]
        })
        .collect())
}

/// `c(j1, j2) = sgn(j1, j2) sgn(sigma) (-1)^l`, where `sgn(j1, j2)` counts the
/// pairs `s < s'` with `sigma(s) < sigma(s')` and both `j2(a_s)`, `j2(a_{s'})` odd.
pub fn capelli_sign(j1: &JFunction, j2: &JFunction, m: usize) -> Result<i64> {
    let sg = sigma(j1, j2)?;
    let im2 = j2.image();
    let l = sg.len();
    let mut count = 0usize;
    for s in 0..l {
        for t in s + 1..l {
            if sg[s] < sg[t] && im2[s] > m && im2[t] > m {
                count += 1;
            }
        }
    }
    let parity = if (count + l) % 2 == 0 { 1 } else { -1 };
    Ok(parity * perm::sign(&sg))
}

/// One summand: the signed weight times `x_{j1} d_{j2}`.
fn weyl_part(p: &ModelParams, j1: &JFunction, j2: &JFunction) -> Result<NOElement> {
    let alg = p.algebra();
    let c = capelli_sign(j1, j2, p.m)?;
    let mult = j2
        .fibre_sizes(p.rows())
        .iter()
        .enumerate()
        .filter(|(i, _)| *i >= p.m)
        .fold(Rational::ONE, |acc, (_, &f)| &acc * &factorial(f as u64));
    let mut letters = j1.x_letters(&alg);
    letters.extend(j2.d_letters(&alg));
    Ok(normal_order_symbol(&letters).scale_ref(&(&mult * &Rational::from_int(c))))
}

/// Every pair `j1 ~ j2` over every domain, grouped by domain.
pub fn equivalent_pairs(m: usize, n: usize, k: usize) -> Vec<(Vec<usize>, Vec<(JFunction, JFunction)>)> {
    subsets(k)
        .into_iter()
        .map(|dom| {
            let js = enumerate_j(&dom, m, n, k);
            let mut pairs = Vec::new();
            for j1 in &js {
                for j2 in &js {
                    if equivalent(j1, j2) {
                        pairs.push((j1.clone(), j2.clone()));
                    }
                }
            }
            (dom, pairs)
        })
        .collect()
}

/// Weyl coefficient of every admissible pair, summed per (domain, image multiset).
fn grouped_coefficients(p: &ModelParams) -> Result<Vec<(Vec<usize>, Vec<usize>, NOElement)>> {
    let groups = equivalent_pairs(p.m, p.n, p.k);
    let parts: Vec<Result<Vec<(Vec<usize>, Vec<usize>, NOElement)>>> = groups
        .par_iter()
        .map(|(dom, pairs)| {
            let mut by_image: BTreeMap<Vec<usize>, NOElement> = BTreeMap::new();
            for (j1, j2) in pairs {
                let mut img = j1.image();
                img.sort_unstable();
                by_image.entry(img).or_default().add_assign_ref(&weyl_part(p, j1, j2)?);
            }
            Ok(by_image.into_iter().map(|(img, e)| (dom.clone(), img, e)).collect())
        })
        .collect();
    let mut out = Vec::new();
    for part in parts {
        out.extend(part?);
    }
    Ok(out)
}

/// `sum c(j1,j2) prod_{i>m} |j2^{-1}(i)|! x_{j1} d_{j2} prod_s (u - Lambda_{j(a_s)})^{-1}
/// prod_{a not in domain} (d_u - z_a)`
pub fn capelli_sum_g(p: &ModelParams) -> Result<Pdo> {
    let res: Vec<VSeries> = p.lambda.iter().map(|l| resolvent(l, p)).collect::<Result<_>>()?;
    let mut total = Pdo::zero();
    for (dom, img, e) in grouped_coefficients(p)? {
        if e.is_zero() {
            continue;
        }
        let denom = img.iter().fold(VSeries::one(), |acc, &i| acc.mul_ref(&res[i - 1]));
        let ops = (1..=p.k)
            .filter(|a| !dom.contains(a))
            .fold(Pdo::one(), |acc, a| acc.mul_ref(&Pdo::d_minus(&p.z[a - 1])));
        total = total.add_ref(&Pdo::from_series(denom.left_mul_element(&e)).mul_ref(&ops));
    }
    Ok(total)
}

/// `prod_{i<=m} (d - Lambda_i) / prod_{i>m} (d - Lambda_i)`
pub fn lambda_operator(p: &ModelParams) -> Result<Pdo> {
    let mut acc = Pdo::one();
    for (i, l) in p.lambda.iter().enumerate() {
        let f = Pdo::d_minus(l);
        let f = if i < p.m { f } else { f.inverse(&p.trunc)? };
        acc = acc.mul_ref(&f);
    }
    Ok(acc)
}

/// `sum c(j1,j2) prod_{i>m} |j2^{-1}(i)|! x_{j1} d_{j2} prod_{a not in domain} (v - z_a)
/// prod_s (d_v - Lambda_{j(a_s)})^{-1}` times [`lambda_operator`].
pub fn capelli_sum_bhat(p: &ModelParams) -> Result<Pdo> {
    let inv: Vec<Pdo> = p.lambda.iter().map(|l| Pdo::d_minus(l).inverse(&p.trunc)).collect::<Result<_>>()?;
    let tail = lambda_operator(p)?;
    let mut total = Pdo::zero();
    for (dom, img, e) in grouped_coefficients(p)? {
        if e.is_zero() {
            continue;
        }
        let poly = (1..=p.k)
            .filter(|a| !dom.contains(a))
            .fold(VSeries::one(), |acc, a| acc.mul_ref(&VSeries::v_minus(&p.z[a - 1])));
        let ops = img.iter().fold(Pdo::one(), |acc, &i| acc.mul_ref(&inv[i - 1]));
        let term = Pdo::from_series(poly.left_mul_element(&e)).mul_ref(&ops.mul_ref(&tail));
        total = total.add_ref(&term);
    }
    Ok(total)
}

/// A summand of an entry of `G` kept apart: Weyl word, `u`-series, `d_u` polynomial.
#[derive(Clone)]
struct Symbol {
    weyl: NOElement,
    series: VSeries,
    ops: Pdo,
}

/// `cdet G` with every product taken supercommutatively: letters are sorted
/// with the sign rule and contractions, including those between `d_u` and
/// functions of `u`, are dropped.
pub fn supercommutative_cdet_g(p: &ModelParams) -> Result<Pdo> {
    let alg = p.algebra();
    let res: Vec<VSeries> = p.lambda.iter().map(|l| resolvent(l, p)).collect::<Result<_>>()?;
    let entry = |a: usize, b: usize| -> Vec<Symbol> {
        let mut out = Vec::new();
        if a == b {
            out.push(Symbol { weyl: NOElement::one(), series: VSeries::one(), ops: Pdo::d_minus(&p.z[a]) });
        }
        for i in 1..=p.rows() {
            out.push(Symbol {
                weyl: alg.xd(i, a + 1, i, b + 1).neg_ref(),
                series: res[i - 1].clone(),
                ops: Pdo::one(),
            });
        }
        out
    };
    let perms = perm::permutations(p.k);
    let terms: Vec<Pdo> = perms
        .par_iter()
        .map(|sg| {
            let mut acc = vec![Symbol { weyl: NOElement::one(), series: VSeries::one(), ops: Pdo::one() }];
            for (col, &row) in sg.iter().enumerate() {
                let mut next = Vec::new();
                for s in &acc {
                    for t in entry(row, col) {
                        let weyl = symbol_product(&s.weyl, &t.weyl);
                        if weyl.is_zero() {
                            continue;
                        }
                        next.push(Symbol {
                            weyl,
                            series: s.series.mul_ref(&t.series),
                            ops: s.ops.mul_ref(&t.ops),
                        });
                    }
                }
                acc = next;
            }
            let sign = Rational::from_int(perm::sign(sg));
            acc.into_iter().fold(Pdo::zero(), |tot, s| {
                let lead = Pdo::from_series(s.series.left_mul_element(&s.weyl));
                tot.add_ref(&lead.mul_ref(&s.ops).scale_ref(&sign))
            })
        })
        .collect();
    Ok(terms.into_iter().fold(Pdo::zero(), |acc, t| acc.add_ref(&t)))
}

/// `:a b:` extended bilinearly.
fn symbol_product(a: &NOElement, b: &NOElement) -> NOElement {
    let mut out = NOElement::zero();
    for (wa, ca) in a.terms() {
        for (wb, cb) in b.terms() {
            let mut letters = wa.letters();
            letters.extend(wb.letters());
            out.add_assign_ref(&normal_order_symbol(&letters).scale_ref(&(ca * cb)));
        }
    }
    out
}
