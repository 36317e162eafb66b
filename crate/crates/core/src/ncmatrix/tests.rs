use super::*;
use crate::rational::Rational;
use crate::ring::{Ring, Truncation};
use crate::specseries::{Pdo, VSeries, WSeries};
use crate::superweyl::{NOElement, ParitySequence, SuperWeyl};

fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

fn trunc() -> Truncation {
    Truncation::new(-10, -8, 6)
}

#[test]
fn cdet_two_by_two_keeps_column_order() {
    let alg = SuperWeyl::new(2, 0, 1);
    let (a, b, c, d) = (alg.x(1, 1), alg.d(1, 1), alg.d(2, 1), alg.x(2, 1));
    let m = NCMatrix::from_rows(
        ParitySequence::all_even(2),
        vec![vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]],
    )
    .unwrap();
    let expected = &(&a * &d) - &(&c * &b);
    assert_eq!(m.cdet(), expected);
    let row = &(&a * &d) - &(&b * &c);
    assert_eq!(m.rdet(), row);
    assert_eq!(NCMatrix::<NOElement>::identity(ParitySequence::all_even(3)).cdet(), NOElement::one());
}

#[test]
fn diagonal_berezinian_of_mixed_parity() {
    let p = VSeries::v_minus(&q(2));
    let r = VSeries::v_minus(&q(7));
    let m = NCMatrix::from_rows(
        ParitySequence::new(vec![1, -1]).unwrap(),
        vec![vec![p.clone(), VSeries::zero()], vec![VSeries::zero(), r.clone()]],
    )
    .unwrap();
    let ber = m.ber(&trunc()).unwrap();
    let expected = p.mul_ref(&r.inverse(&trunc()).unwrap());
    assert!(ber.compare(&expected).all_pass());
    let id = NCMatrix::<VSeries>::identity(ParitySequence::new(vec![-1, 1, -1]).unwrap());
    assert_eq!(id.ber(&trunc()).unwrap(), VSeries::one());
}

#[test]
fn commutative_quasi_minor() {
    let rows = vec![vec![q(2), q(3)], vec![q(5), q(7)]];
    let m = NCMatrix::from_rows(ParitySequence::all_even(2), rows).unwrap();
    let t = trunc();
    assert_eq!(m.quasi_minor(1, &t).unwrap(), q(2));
    assert_eq!(m.quasi_minor(2, &t).unwrap(), Rational::new(-1, 2));
    assert_eq!(m.quasi_minors(&t).unwrap(), vec![q(2), Rational::new(-1, 2)]);
    assert_eq!(m.ber(&t).unwrap(), q(-1));
}

#[test]
fn gauss_jordan_inverse() {
    let rows = vec![vec![q(2), q(1), q(0)], vec![q(1), q(3), q(1)], vec![q(0), q(1), q(4)]];
    let m = NCMatrix::from_rows(ParitySequence::all_even(3), rows).unwrap();
    let inv = m.inverse(&trunc()).unwrap();
    assert_eq!(m.mul(&inv), NCMatrix::identity(ParitySequence::all_even(3)));
    assert_eq!(inv.mul(&m), NCMatrix::identity(ParitySequence::all_even(3)));
}

#[test]
fn manin_examples() {
    let alg = SuperWeyl::new(1, 0, 1);
    let (x, d) = (alg.x(1, 1), alg.d(1, 1));
    let one = NOElement::one();
    let stated = NCMatrix::from_rows(
        ParitySequence::all_even(2),
        vec![vec![x.clone(), d.clone()], vec![one.clone(), one.clone()]],
    )
    .unwrap();
    assert!(stated.is_manin().holds());
    let broken = NCMatrix::from_rows(
        ParitySequence::all_even(2),
        vec![vec![x.clone(), one.clone()], vec![d.clone(), one.clone()]],
    )
    .unwrap();
    let report = broken.is_manin();
    assert_eq!(report.violation.unwrap().quadruple, (1, 1, 2, 1));
}

#[test]
fn permutation_action() {
    let rows = vec![vec![q(1), q(2)], vec![q(3), q(4)]];
    let m = NCMatrix::from_rows(ParitySequence::new(vec![1, -1]).unwrap(), rows).unwrap();
    assert_eq!(m.permute(&[0, 1]), m);
    let s = m.permute(&[1, 0]);
    assert_eq!(*s.get(0, 0), q(4));
    assert_eq!(*s.get(0, 1), q(3));
    assert_eq!(s.parity().entries(), &[-1, 1]);
}

#[test]
fn block_split_agrees() {
    let rows = vec![vec![q(2), q(1), q(0)], vec![q(1), q(3), q(1)], vec![q(0), q(1), q(4)]];
    let m = NCMatrix::from_rows(ParitySequence::new(vec![1, -1, 1]).unwrap(), rows).unwrap();
    let t = trunc();
    let full = m.ber(&t).unwrap();
    for r in 0..=3 {
        assert_eq!(m.block_ber(r, &t).unwrap(), full);
    }
}

#[test]
fn nilpotent_affine_inverse() {
    let w = |c: i64| WSeries::monomial(1, Pdo::scalar(q(c)));
    let one = WSeries::<Pdo>::one();
    let zero = WSeries::<Pdo>::zero();
    let m = NCMatrix::from_rows(
        ParitySequence::all_even(2),
        vec![vec![one.clone(), zero.clone()], vec![w(3), one.clone()]],
    )
    .unwrap();
    let inv = m.affine_inverse(&trunc()).unwrap();
    let expected = NCMatrix::from_rows(
        ParitySequence::all_even(2),
        vec![vec![one.clone(), zero.clone()], vec![w(-3), one.clone()]],
    )
    .unwrap();
    assert!(inv.compare(&expected).all_pass());
    let id = NCMatrix::<WSeries<Pdo>>::identity(ParitySequence::all_even(2));
    assert!(id.affine_inverse(&trunc()).unwrap().compare(&id).all_pass());
    let not_affine = m.scale(&q(2));
    assert!(not_affine.affine_inverse(&trunc()).is_err());
}

#[test]
fn standard_formula_matches_quasi_minors() {
    let rows = vec![vec![q(2), q(1), q(5)], vec![q(1), q(3), q(1)], vec![q(2), q(1), q(4)]];
    let m = NCMatrix::from_rows(ParitySequence::standard(2, 1), rows).unwrap();
    let t = trunc();
    assert_eq!(m.ber_standard(&t).unwrap(), m.ber(&t).unwrap());
    assert!(Ring::is_zero(&m.ber(&t).unwrap().sub(&m.block_ber(1, &t).unwrap())));
}
