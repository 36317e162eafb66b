use gaudin_duality::fock::{operator_matrix, weight_basis, weights_of_degree};
use gaudin_duality::gaudin::*;
use gaudin_duality::specseries::{phi_hat, Pdo};
use gaudin_duality::{Rational, Ring, Truncation};

fn r(s: &str) -> Rational {
    s.parse().unwrap()
}

fn params(m: usize, n: usize, k: usize, z: &[&str], l: &[&str]) -> ModelParams {
    ModelParams::new(m, n, k, z.iter().map(|s| r(s)).collect(), l.iter().map(|s| r(s)).collect()).unwrap()
}

fn assert_pass(cmp: &gaudin_duality::window::Comparison, what: &str) {
    assert!(cmp.compared() > 0, "{what}: nothing compared");
    assert!(cmp.all_pass(), "{what} on {}: {:?}", cmp.window, cmp.mismatches().take(4).collect::<Vec<_>>());
}

#[test]
fn capelli_with_fractional_parameters() {
    let p = params(1, 1, 2, &["1/2", "-3/4"], &["2/3", "5"]);
    assert_pass(&build_g(&p).unwrap().cdet().compare(&capelli_sum_g(&p).unwrap()), "cdet G");
    assert_pass(&ber_bhat(&p).unwrap().compare(&capelli_sum_bhat(&p).unwrap()), "Ber B-hat");
    assert_pass(&build_g(&p).unwrap().cdet().compare(&supercommutative_cdet_g(&p).unwrap()), "oracle");
}

#[test]
fn duality_with_fractional_parameters() {
    let p = params(2, 1, 1, &["-1/3"], &["1/2", "7/5", "-2"]);
    let rep = duality_check(&p, DEFAULT_DEPTH).unwrap();
    assert!(rep.holds());
}

#[test]
fn equal_lambdas_are_allowed() {
    let p = params(1, 1, 1, &["1"], &["2", "2"]);
    assert!(duality_check(&p, DEFAULT_DEPTH).unwrap().holds());
}

#[test]
fn deeper_truncation_agrees() {
    let p = ModelParams::sample(1, 1, 2).unwrap();
    let mut deep = p.clone();
    deep.trunc.d_floor -= 3;
    assert_pass(&ber_bhat(&p).unwrap().compare(&ber_bhat(&deep).unwrap()), "Ber B-hat");
    assert_pass(&ber_ghat(&p).unwrap().compare(&ber_ghat(&deep).unwrap()), "Ber G-hat");
}

#[test]
fn bordered_berezinian_factorises() {
    let p = params(1, 1, 1, &["1"], &["2", "3"]);
    let ber_b = build_b(&p).unwrap().ber(&p.trunc).unwrap();
    let lhs = Pdo::from_series(z_polynomial(&p)).mul_ref(&ber_b);
    assert_pass(&lhs.compare(&ber_bhat(&p).unwrap()), "(v - z) Ber B");
    // the Schur complement of the first k pivots is B itself
    let sc = build_bhat(&p).schur_complement(p.k, &b_side_truncation(&p)).unwrap();
    assert_pass(&sc.compare(&build_b(&p).unwrap()), "Schur complement");
}

#[test]
fn first_order_term_is_the_supertrace() {
    let p = params(1, 1, 1, &["1"], &["2", "3"]);
    let e = expand_bethe(&p).unwrap();
    let b = build_b(&p).unwrap();
    let str_b = (0..p.rows()).fold(Pdo::zero(), |acc, i| {
        let d = b.get(i, i).clone();
        if i < p.m {
            acc.add_ref(&d)
        } else {
            acc.sub(&d)
        }
    });
    assert_pass(&e.series.coeff(1).unwrap().compare(&str_b), "w^1");
    assert_eq!(e.series.coeff(0).unwrap(), Pdo::one());
}

#[test]
fn shift_image_of_bordered_berezinian() {
    // Phi-hat(Ber B-hat) = w^{-(k+m-n)} Ber(1 + w B-hat)
    let p = params(1, 1, 1, &["1"], &["2", "3"]);
    let direct = build_bhat(&p).ber(&p.trunc).unwrap();
    let w_top = 4;
    let lhs = phi_hat(&direct, w_top);
    let trunc = Truncation { w_top: w_top + 1, ..p.trunc };
    let sum_s = p.k as i64 + p.super_dim();
    let rhs = affine_of(&build_bhat(&p)).ber(&trunc).unwrap().shift(-sum_s);
    assert_pass(&lhs.compare(&rhs), "shift image");
}

#[test]
fn duality_on_weight_spaces() {
    let p = params(1, 1, 1, &["1"], &["2", "3"]);
    let rep = duality_check(&p, 3).unwrap();
    let alg = p.algebra();
    for d in 0..=3 {
        for (l, m) in weights_of_degree(&alg, d) {
            let basis = weight_basis(&alg, &l, &m).unwrap();
            if basis.dim() == 0 {
                continue;
            }
            for (&(r, s), b) in &rep.b.entries {
                let g = rep.g.get(s, r).unwrap();
                assert_eq!(operator_matrix(b, &basis).unwrap(), operator_matrix(g, &basis).unwrap());
            }
        }
    }
}

#[test]
fn affine_inverse_is_two_sided() {
    let p = params(1, 1, 1, &["1"], &["2", "3"]);
    let trunc = Truncation { w_top: 4, ..p.trunc };
    let a = affine_b(&p).unwrap();
    let inv = a.affine_inverse(&trunc).unwrap();
    let id = gaudin_duality::ncmatrix::NCMatrix::identity(a.parity().clone());
    assert_pass(&a.mul(&inv).compare(&id), "A A^-1");
    assert_pass(&inv.mul(&a).compare(&id), "A^-1 A");
}
