//! The model matrices over pseudodifferential operators.

use super::params::ModelParams;
use crate::error::Result;
use crate::ncmatrix::NCMatrix;
use crate::rational::Rational;
use crate::ring::Ring;
use crate::specseries::{Pdo, VSeries};
use crate::superweyl::ParitySequence;

fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

/// `(t - c)^{-1}` expanded in `t^{-1}`.
pub fn resolvent(c: &Rational, p: &ModelParams) -> Result<VSeries> {
    VSeries::v_minus(c).inverse(&p.trunc)
}

/// `G_{ab} = delta_{ab}(d_u - z_a) - sum_i x_{ia} d_{ib} (u - Lambda_i)^{-1}`, all even.
pub fn build_g(p: &ModelParams) -> Result<NCMatrix<Pdo>> {
    let alg = p.algebra();
    let res: Vec<VSeries> = p.lambda.iter().map(|l| resolvent(l, p)).collect::<Result<_>>()?;
    Ok(NCMatrix::from_fn(ParitySequence::all_even(p.k), |a, b| {
        let mut e = if a == b { Pdo::d_minus(&p.z[a]) } else { Pdo::zero() };
        for i in 1..=p.rows() {
            let t = res[i - 1].left_mul_element(&alg.xd(i, a + 1, i, b + 1));
            e = e.sub(&Pdo::from_series(t));
        }
        e
    }))
}

/// `B_{ij} = delta_{ij}(d_v - Lambda_i) - sum_a (-1)^{\bar i} x_{ia} d_{ja} (v - z_a)^{-1}`,
/// standard parity.
pub fn build_b(p: &ModelParams) -> Result<NCMatrix<Pdo>> {
    let alg = p.algebra();
    let res: Vec<VSeries> = p.z.iter().map(|z| resolvent(z, p)).collect::<Result<_>>()?;
    Ok(NCMatrix::from_fn(ParitySequence::standard(p.m, p.n), |i, j| {
        let mut e = if i == j { Pdo::d_minus(&p.lambda[i]) } else { Pdo::zero() };
        for a in 1..=p.k {
            let t = res[a - 1].left_mul_element(&alg.xd(i + 1, a, j + 1, a));
            e = e.sub(&Pdo::from_series(t).scale_ref(&q(p.row_sign(i + 1))));
        }
        e
    }))
}

/// `[[v - Z, D^t], [S X, d_v - Lambda]]` of parity `(1^{k+m}, -1^n)`.
pub fn build_bhat(p: &ModelParams) -> NCMatrix<Pdo> {
    let alg = p.algebra();
    let k = p.k;
    let parity = ParitySequence::from_blocks(&[(1, k + p.m), (-1, p.n)]);
    NCMatrix::from_fn(parity, |r, c| match (r < k, c < k) {
        (true, true) if r == c => Pdo::from_series(VSeries::v_minus(&p.z[r])),
        (true, false) => Pdo::element(alg.d(c - k + 1, r + 1)),
        (false, true) => Pdo::element(alg.x(r - k + 1, c + 1).scale_ref(&q(p.row_sign(r - k + 1)))),
        (false, false) if r == c => Pdo::d_minus(&p.lambda[r - k]),
        _ => Pdo::zero(),
    })
}

/// `[[u - Lambda, D], [X^t, d_u - Z]]` of parity `(1^m, -1^n, 1^k)`.
pub fn build_ghat(p: &ModelParams) -> NCMatrix<Pdo> {
    let alg = p.algebra();
    let r0 = p.rows();
    let parity = ParitySequence::from_blocks(&[(1, p.m), (-1, p.n), (1, p.k)]);
    NCMatrix::from_fn(parity, |r, c| match (r < r0, c < r0) {
        (true, true) if r == c => Pdo::from_series(VSeries::v_minus(&p.lambda[r])),
        (true, false) => Pdo::element(alg.d(r + 1, c - r0 + 1)),
        (false, true) => Pdo::element(alg.x(c + 1, r - r0 + 1)),
        (false, false) if r == c => Pdo::d_minus(&p.z[r - r0]),
        _ => Pdo::zero(),
    })
}

/// `prod_a (v - z_a)`
pub fn z_polynomial(p: &ModelParams) -> VSeries {
    p.z.iter().fold(VSeries::one(), |acc, z| acc.mul_ref(&VSeries::v_minus(z)))
}

/// `prod_i (u - Lambda_i)^{s_i}` with `s_i = -1` on odd rows.
pub fn lambda_prefactor(p: &ModelParams) -> Result<VSeries> {
    let mut acc = VSeries::one();
    for (i, l) in p.lambda.iter().enumerate() {
        let f = if i < p.m { VSeries::v_minus(l) } else { resolvent(l, p)? };
        acc = acc.mul_ref(&f);
    }
    Ok(acc)
}
