use gaudin_duality::specseries::{phi, phi_hat, Pdo, VSeries};
use gaudin_duality::superweyl::{NOElement, SuperWeyl};
use gaudin_duality::{Rational, Truncation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed;
const PAIRS: usize = 20;
const W_TOP: i64 = 5;
/// Extra depth of the reference computation in the soundness checks.
const EXTRA: i64 = 4;

fn weyl(rng: &mut ChaCha8Rng) -> NOElement {
    let alg = SuperWeyl::new(1, 1, 1);
    let gens = alg.generators();
    // even words only, so every coefficient is homogeneous
    let choices = [
        NOElement::one(),
        NOElement::generator(gens[0]),
        NOElement::generator(gens[2]),
        alg.xd(1, 1, 1, 1),
        alg.xd(2, 1, 2, 1),
    ];
    let c = Rational::from_int(rng.gen_range(-3..=3));
    choices[rng.gen_range(0..choices.len())].scale_ref(&c)
}

fn series(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> VSeries {
    VSeries::from_terms((lo..=hi).map(|d| (d, weyl(rng))).collect::<Vec<_>>(), None)
}

fn pdo(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Pdo {
    Pdo::from_terms((lo..=hi).map(|r| (r, series(rng, -1, 2))).collect::<Vec<_>>(), None)
}

#[test]
fn phi_is_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for i in 0..PAIRS {
        let a = pdo(&mut rng, -1, 2);
        let b = pdo(&mut rng, -1, 2);
        let lhs = phi(&a.mul_ref(&b), W_TOP);
        let rhs = phi(&a, W_TOP).mul_ref(&phi(&b, W_TOP));
        let cmp = lhs.compare(&rhs);
        assert!(cmp.compared() > 0, "pair {i}: empty window {}", cmp.window);
        assert!(cmp.all_pass(), "pair {i}: {:?}", cmp.mismatches().take(3).collect::<Vec<_>>());
    }
}

#[test]
fn phi_hat_is_multiplicative_on_polynomials() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    for i in 0..PAIRS {
        let a = Pdo::from_terms((0..=2).map(|r| (r, series(&mut rng, 0, 2))).collect::<Vec<_>>(), None);
        let b = Pdo::from_terms((0..=2).map(|r| (r, series(&mut rng, 0, 2))).collect::<Vec<_>>(), None);
        let lhs = phi_hat(&a.mul_ref(&b), W_TOP);
        let rhs = phi_hat(&a, W_TOP).mul_ref(&phi_hat(&b, W_TOP));
        assert_eq!(lhs, rhs, "pair {i}");
    }
}

#[test]
fn operator_inverse_floors_are_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    for i in 0..PAIRS {
        let lead = Pdo::d_pow(2).scale_ref(&Rational::from_int(rng.gen_range(1..=3)));
        let p = lead.add_ref(&pdo(&mut rng, -1, 1));
        let shallow = Truncation::new(-6, -6, W_TOP);
        let deep = Truncation::new(-6 - EXTRA, -6 - EXTRA, W_TOP);
        let a = p.inverse(&shallow).unwrap();
        let b = p.inverse(&deep).unwrap();
        let cmp = a.compare(&b);
        assert!(cmp.compared() > 0 && cmp.all_pass(), "case {i}: {}", cmp.window);
        let one = a.mul_ref(&p).compare(&Pdo::one());
        assert!(one.compared() > 0 && one.all_pass(), "case {i}: left inverse on {}", one.window);
        let one = p.mul_ref(&a).compare(&Pdo::one());
        assert!(one.compared() > 0 && one.all_pass(), "case {i}: right inverse on {}", one.window);
    }
}

#[test]
fn series_inverse_floors_are_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    for i in 0..PAIRS {
        let lead = VSeries::monomial(2, NOElement::scalar(Rational::from_int(rng.gen_range(1..=3))));
        let s = lead.add_ref(&series(&mut rng, -1, 1));
        let a = s.inverse(&Truncation::new(-8, -6, W_TOP)).unwrap();
        let b = s.inverse(&Truncation::new(-8 - EXTRA, -6, W_TOP)).unwrap();
        let cmp = a.compare(&b);
        assert!(cmp.compared() > 0 && cmp.all_pass(), "case {i}: {}", cmp.window);
        let prod = a.mul_ref(&b.inverse(&Truncation::new(-8, -6, W_TOP)).unwrap());
        let cmp = prod.compare(&VSeries::one());
        assert!(cmp.all_pass(), "case {i}: {}", cmp.window);
    }
}

#[test]
fn products_of_truncated_operators_are_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    for i in 0..PAIRS {
        let p = Pdo::d_pow(1).add_ref(&pdo(&mut rng, -1, 0));
        let q = Pdo::d_pow(1).add_ref(&pdo(&mut rng, -1, 0));
        let t = |f: i64| Truncation::new(f, f, W_TOP);
        let a = p.inverse(&t(-5)).unwrap().mul_ref(&q.inverse(&t(-5)).unwrap());
        let b = p.inverse(&t(-5 - EXTRA)).unwrap().mul_ref(&q.inverse(&t(-5 - EXTRA)).unwrap());
        let cmp = a.compare(&b);
        assert!(cmp.compared() > 0 && cmp.all_pass(), "case {i}: {}", cmp.window);
    }
}
