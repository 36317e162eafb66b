//! The shift homomorphisms into Laurent series in `w`.

use std::collections::BTreeMap;

use super::pdo::Pdo;
use super::vseries::VSeries;
use super::wseries::WSeries;
use crate::rational::binomial;
use crate::superweyl::NOElement;

type Slots = BTreeMap<i64, BTreeMap<i64, BTreeMap<i64, NOElement>>>;

fn push(slots: &mut Slots, q: i64, order: i64, degree: i64, c: NOElement) {
    slots
        .entry(q)
        .or_default()
        .entry(order)
        .or_default()
        .entry(degree)
        .or_default()
        .add_assign_ref(&c);
}

/// `d^r -> (d + w^{-1})^r = sum_s C(r,s) d^s w^{s-r}`, coefficients fixed.
///
/// Powers of `w` up to `w_top` are produced. The image is exact for powers
/// `q <= -floor` when the operator has an order floor.
pub fn phi(p: &Pdo, w_top: i64) -> WSeries<Pdo> {
    let mut ceiling = p.floor().map(|f| w_top.min(-f));
    if p.bottom_order().is_some_and(|r| r < 0) {
        ceiling = Some(ceiling.unwrap_or(w_top));
    }
    let mut out: BTreeMap<i64, Pdo> = BTreeMap::new();
    for (r, a) in p.terms() {
        let mut s = 0i64;
        loop {
            let q = s - r;
            if (r >= 0 && s > r) || ceiling.is_some_and(|t| q > t) {
                break;
            }
            let c = binomial(r, s as u64);
            let term = Pdo::monomial(s, a.scale_ref(&c));
            out.entry(q).or_default().add_assign_ref(&term);
            s += 1;
        }
    }
    WSeries::from_terms(out, ceiling)
}

/// Highest power of `w` at which [`phi_hat`] is certified, given only the
/// floors of `p` and a cap. Coefficients below an order floor are assumed
/// to have degrees no larger than the largest degree seen in `p`.
pub fn phi_hat_ceiling(p: &Pdo, w_top: i64) -> i64 {
    let mut ceiling = w_top;
    for (s, a) in p.terms() {
        if let Some(f) = a.floor() {
            ceiling = ceiling.min(-f - s);
        }
    }
    if let Some(f) = p.floor() {
        let d = p.degree_top().unwrap_or(0);
        ceiling = ceiling.min(-d - f);
    }
    ceiling
}

/// `v -> v + w^{-1}`, `d -> d + w^{-1}`, Weyl generators fixed.
///
/// Every coefficient of the image is a polynomial in `v` and `d`.
pub fn phi_hat(p: &Pdo, w_top: i64) -> WSeries<Pdo> {
    let ceiling = phi_hat_ceiling(p, w_top);
    let finite = p.is_exact()
        && p.bottom_order().map_or(true, |s| s >= 0)
        && p.terms().all(|(_, a)| a.is_polynomial());
    let mut slots = Slots::new();
    for (s, a) in p.terms() {
        for (d, c) in a.terms() {
            let base = -d - s;
            if !finite && base > ceiling {
                continue;
            }
            let mut j = 0i64;
            while (d < 0 || j <= d) && (finite || base + j <= ceiling) {
                let cj = binomial(d, j as u64);
                let mut l = 0i64;
                while (s < 0 || l <= s) && (finite || base + j + l <= ceiling) {
                    let coeff = c.scale_ref(&(&cj * &binomial(s, l as u64)));
                    push(&mut slots, base + j + l, l, j, coeff);
                    l += 1;
                }
                j += 1;
            }
        }
    }
    let terms = slots.into_iter().map(|(q, orders)| {
        let pdo = Pdo::from_terms(
            orders
                .into_iter()
                .map(|(l, degs)| (l, VSeries::from_terms(degs, None))),
            None,
        );
        (q, pdo)
    });
    WSeries::from_terms(terms, (!finite).then_some(ceiling))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;
    use crate::ring::Truncation;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn v() -> VSeries {
        VSeries::monomial(1, NOElement::one())
    }

    #[test]
    fn phi_of_d() {
        let img = phi(&Pdo::d_pow(1), 6);
        let expected = WSeries::from_terms([(0, Pdo::d_pow(1)), (-1, Pdo::one())], None);
        assert_eq!(img, expected);
    }

    #[test]
    fn phi_of_inverse_d() {
        let img = phi(&Pdo::d_pow(-1), 6);
        assert_eq!(img.ceiling(), Some(6));
        for s in 0..=5 {
            let sign = if s % 2 == 0 { 1 } else { -1 };
            assert_eq!(img.coeff(s + 1).unwrap(), Pdo::d_pow(s).scale_ref(&q(sign)));
        }
    }

    #[test]
    fn phi_fixes_order_zero() {
        let a = Pdo::from_series(VSeries::v_minus(&q(4)));
        assert_eq!(phi(&a, 6), WSeries::constant(a));
    }

    #[test]
    fn phi_hat_generators() {
        let img = phi_hat(&Pdo::from_series(v()), 6);
        let expected = WSeries::from_terms([(0, Pdo::from_series(v())), (-1, Pdo::one())], None);
        assert_eq!(img, expected);
        let img = phi_hat(&Pdo::d_pow(1), 6);
        let expected = WSeries::from_terms([(0, Pdo::d_pow(1)), (-1, Pdo::one())], None);
        assert_eq!(img, expected);
    }

    #[test]
    fn phi_hat_of_resolvent() {
        let trunc = Truncation::new(-10, -8, 6);
        let alg = crate::superweyl::SuperWeyl::new(1, 0, 1);
        let x = alg.x(1, 1);
        let a = VSeries::v_minus(&q(2)).inverse(&trunc).unwrap().left_mul_element(&x);
        let img = phi_hat(&Pdo::from_series(a), 6);
        // x w sum_s (-w)^s (v - 2)^s
        let mut expected = Vec::new();
        let vm = VSeries::v_minus(&q(2));
        let mut pow = VSeries::one();
        for s in 0..=5 {
            let sign = if s % 2 == 0 { 1 } else { -1 };
            expected.push((s + 1, Pdo::from_series(pow.left_mul_element(&x).scale_ref(&q(sign)))));
            pow = pow.mul_ref(&vm);
        }
        let expected = WSeries::from_terms(expected, Some(6));
        let cmp = img.compare(&expected);
        assert!(cmp.all_pass(), "{:?}", cmp.mismatches().collect::<Vec<_>>());
        assert!(cmp.compared() >= 6);
    }
}
