use super::*;
use crate::rational::Rational;
use crate::ring::Ring;
use crate::specseries::{Pdo, VSeries};
use crate::superweyl::NOElement;

fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

fn params(m: usize, n: usize, k: usize, z: &[i64], l: &[i64]) -> ModelParams {
    ModelParams::new(m, n, k, z.iter().map(|&a| q(a)).collect(), l.iter().map(|&a| q(a)).collect()).unwrap()
}

fn assert_window_eq(a: &Pdo, b: &Pdo) {
    let cmp = a.compare(b);
    assert!(cmp.compared() > 0);
    assert!(cmp.all_pass(), "{}: {:?}", cmp.window, cmp.mismatches().take(5).collect::<Vec<_>>());
}

#[test]
fn g_one_by_one() {
    let p = params(1, 0, 1, &[2], &[5]);
    let g = build_g(&p).unwrap();
    let alg = p.algebra();
    let res = resolvent(&q(5), &p).unwrap();
    let expected = Pdo::d_minus(&q(2)).sub(&Pdo::from_series(res.left_mul_element(&alg.xd(1, 1, 1, 1))));
    assert_eq!(g.get(0, 0), &expected);
}

#[test]
fn bhat_shape() {
    let p = params(1, 1, 1, &[1], &[2, 3]);
    let bh = build_bhat(&p);
    let alg = p.algebra();
    assert_eq!(bh.parity().entries(), &[1, 1, -1]);
    assert_eq!(bh.get(0, 2), &Pdo::element(alg.d(2, 1)));
    assert_eq!(bh.get(2, 0), &Pdo::element(alg.x(2, 1).neg_ref()));
    assert_eq!(bh.get(1, 1), &Pdo::d_minus(&q(2)));
    assert!(bh.get(1, 2).is_exact_zero());
    let gh = build_ghat(&p);
    assert_eq!(gh.parity().entries(), &[1, -1, 1]);
    assert_eq!(gh.get(2, 1), &Pdo::element(alg.x(2, 1)));
}

#[test]
fn j_enumeration() {
    assert_eq!(enumerate_j(&[], 1, 1, 2), vec![JFunction { values: vec![0, 0] }]);
    assert_eq!(enumerate_j(&[1, 2], 1, 1, 2).len(), 3);
    assert_eq!(enumerate_j(&[1, 2, 3], 0, 2, 3).len(), 8);
    for (m, n) in [(1, 0), (2, 1), (1, 2), (3, 0), (0, 3)] {
        for k in 1..=3 {
            for dom in subsets(k) {
                let l = dom.len();
                assert_eq!(enumerate_j(&dom, m, n, k).len() as u128, j_count(l, m, n), "{m} {n} {dom:?}");
            }
        }
    }
}

#[test]
fn sign_basics() {
    let j = JFunction { values: vec![1] };
    assert_eq!(capelli_sign(&j, &j, 1).unwrap(), -1);
    let j1 = JFunction { values: vec![1, 2] };
    let j2 = JFunction { values: vec![2, 1] };
    assert_eq!(sigma(&j1, &j2).unwrap(), vec![1, 0]);
    assert!(capelli_sign(&j1, &JFunction { values: vec![1, 1] }, 0).is_err());
}

#[test]
fn capelli_g_trivial() {
    let p = params(1, 0, 1, &[2], &[5]);
    let g = build_g(&p).unwrap();
    assert_eq!(capelli_sum_g(&p).unwrap(), g.get(0, 0).clone());
}

#[test]
fn capelli_g_small_sizes() {
    for (m, n, k) in [(1, 1, 1), (0, 1, 2), (1, 1, 2), (2, 0, 2), (0, 2, 2)] {
        let p = ModelParams::sample(m, n, k).unwrap();
        let cdet = build_g(&p).unwrap().cdet();
        assert_window_eq(&cdet, &capelli_sum_g(&p).unwrap());
        assert_window_eq(&cdet, &supercommutative_cdet_g(&p).unwrap());
    }
}

#[test]
fn capelli_bhat_trivial() {
    let p = params(1, 0, 1, &[2], &[5]);
    let alg = p.algebra();
    let expected = Pdo::from_series(VSeries::v_minus(&q(2)))
        .mul_ref(&Pdo::d_minus(&q(5)))
        .sub(&Pdo::element(alg.xd(1, 1, 1, 1)));
    assert_window_eq(&capelli_sum_bhat(&p).unwrap(), &expected);
    assert_window_eq(&ber_bhat(&p).unwrap(), &expected);
}

#[test]
fn capelli_bhat_small_sizes() {
    for (m, n, k) in [(1, 1, 1), (0, 1, 1), (1, 1, 2), (0, 2, 2)] {
        let p = ModelParams::sample(m, n, k).unwrap();
        assert_window_eq(&ber_bhat(&p).unwrap(), &capelli_sum_bhat(&p).unwrap());
    }
}

#[test]
fn bordered_g_factorisation() {
    for (m, n, k) in [(1, 0, 1), (1, 1, 1), (0, 1, 2)] {
        let p = ModelParams::sample(m, n, k).unwrap();
        let lhs = ber_ghat(&p).unwrap();
        let pre = Pdo::from_series(lambda_prefactor(&p).unwrap());
        assert_window_eq(&lhs, &pre.mul_ref(&build_g(&p).unwrap().cdet()));
    }
}

#[test]
fn bordered_b_factorisation() {
    let p = params(1, 0, 1, &[2], &[5]);
    let ber_b = build_b(&p).unwrap().ber(&p.trunc).unwrap();
    let lhs = Pdo::from_series(z_polynomial(&p)).mul_ref(&ber_b);
    assert_window_eq(&lhs, &ber_bhat(&p).unwrap());
}

#[test]
fn duality_worked_example() {
    let p = params(1, 0, 1, &[2], &[5]);
    let rep = duality_check(&p, DEFAULT_DEPTH).unwrap();
    let alg = p.algebra();
    let b = &rep.b;
    assert_eq!(b.get(1, 1), Some(&NOElement::one()));
    assert_eq!(b.get(0, 1), Some(&NOElement::scalar(q(-2))));
    assert_eq!(b.get(1, 0), Some(&NOElement::scalar(q(-5))));
    assert_eq!(b.get(0, 0), Some(&NOElement::scalar(q(10)).sub(&alg.xd(1, 1, 1, 1))));
    assert!(rep.holds(), "{:?}", rep.comparison.mismatches().collect::<Vec<_>>());
}

#[test]
fn duality_super_case() {
    let p = params(1, 1, 1, &[1], &[2, 3]);
    let rep = duality_check(&p, DEFAULT_DEPTH).unwrap();
    assert!(rep.holds(), "{:?}", rep.comparison.mismatches().collect::<Vec<_>>());
    assert_eq!(rep.comparison.compared(), 14);
}

#[test]
fn shallow_window_is_reported() {
    let mut p = params(1, 1, 1, &[1], &[2, 3]);
    p.trunc.d_floor = -2;
    assert!(matches!(duality_check(&p, DEFAULT_DEPTH), Err(crate::AlgebraError::WindowTooShallow(_))));
}

#[test]
fn bethe_leading_terms() {
    let p = params(1, 1, 1, &[1], &[2, 3]);
    let e = expand_bethe(&p).unwrap();
    assert_eq!(e.coeff(0, 0).unwrap(), VSeries::one());
    let cmp = phi_consistency(&p, 5).unwrap();
    assert!(cmp.all_pass() && cmp.compared() > 0, "{:?}", cmp.mismatches().collect::<Vec<_>>());
}

#[test]
fn structural_checks_small() {
    let p = params(1, 1, 1, &[1], &[2, 3]);
    for c in ber_invariance(&p, 4).unwrap() {
        assert!(c.holds(), "{} {:?}", c.name, c.comparison.mismatches().take(3).collect::<Vec<_>>());
    }
    for c in block_factorisation(&p, 4).unwrap() {
        assert!(c.holds(), "{} {:?}", c.name, c.comparison.mismatches().take(3).collect::<Vec<_>>());
    }
    for m in manin_checks(&p, 3).unwrap() {
        assert!(m.report.holds(), "{} {:?}", m.name, m.report.violation);
    }
}
