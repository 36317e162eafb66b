use gaudin_duality::fock::{apply_to_v, weight_basis, weights_of_degree, VVector};
use gaudin_duality::superweyl::{normal_order_symbol, rewrite, Generator, Kind, NOElement, Scan, SuperWeyl};
use gaudin_duality::Rational;
use proptest::prelude::*;

const ALG: SuperWeyl = SuperWeyl { m: 1, n: 1, k: 2 };

fn letter() -> impl Strategy<Value = Generator> {
    let gens = ALG.generators();
    (0..gens.len()).prop_map(move |i| gens[i])
}

fn word() -> impl Strategy<Value = Vec<Generator>> {
    prop::collection::vec(letter(), 0..6)
}

fn element() -> impl Strategy<Value = NOElement> {
    prop::collection::vec((word(), -3i64..=3), 1..4).prop_map(|terms| {
        terms.into_iter().fold(NOElement::zero(), |acc, (w, c)| {
            acc.add_ref(&NOElement::product_of(&w).scale_ref(&Rational::from_int(c)))
        })
    })
}

fn act(p: &NOElement, v: &VVector) -> VVector {
    let mut out = VVector::new();
    for (mono, c) in v {
        for (img, e) in apply_to_v(p, mono) {
            let slot = out.entry(img).or_insert(Rational::ZERO);
            *slot = &*slot + &(c * &e);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn product_is_associative(a in element(), b in element(), c in element()) {
        prop_assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
    }

    #[test]
    fn rewriting_order_does_not_matter(w in word()) {
        let left = rewrite(&w, Scan::LeftFirst);
        prop_assert_eq!(&left, &rewrite(&w, Scan::RightFirst));
        prop_assert_eq!(&left, &NOElement::product_of(&w));
    }

    #[test]
    fn symbol_is_leading_part(w in word()) {
        // the top-degree part of the product is the normal-ordering symbol
        let full = NOElement::product_of(&w);
        let top: NOElement = NOElement::from_terms(
            full.terms().filter(|(t, _)| t.degree() == w.len()).map(|(t, c)| (t.clone(), c.clone())),
        );
        prop_assert_eq!(top, normal_order_symbol(&w));
    }

    #[test]
    fn grading_is_additive(a in word(), b in word()) {
        let pa = NOElement::product_of(&a);
        let pb = NOElement::product_of(&b);
        let prod = pa.mul_ref(&pb);
        if !prod.is_zero() {
            let expected = pa.grade().parity().unwrap() + pb.grade().parity().unwrap();
            prop_assert_eq!(prod.grade().parity().unwrap(), expected);
        }
    }

    #[test]
    fn action_respects_products(a in element(), b in element(), d in 0u32..=2, pick in 0usize..64) {
        let spaces = weights_of_degree(&ALG, d);
        let (l, m) = &spaces[pick % spaces.len()];
        for mono in weight_basis(&ALG, l, m).unwrap().monomials {
            let v = VVector::from([(mono, Rational::ONE)]);
            prop_assert_eq!(act(&a.mul_ref(&b), &v), act(&a, &act(&b, &v)));
        }
    }
}

#[test]
fn defining_relations() {
    let gens = ALG.generators();
    for g in &gens {
        for h in &gens {
            let (a, b) = (NOElement::generator(*g), NOElement::generator(*h));
            let br = a.super_commutator(&b).unwrap();
            let expected = if g.site == h.site && g.kind != h.kind {
                // [d, x] = 1; [x, d] = -1 on even sites and +1 on odd ones
                let sign = if g.kind == Kind::D { 1 } else if g.site.odd { 1 } else { -1 };
                NOElement::scalar(Rational::from_int(sign))
            } else {
                NOElement::zero()
            };
            assert_eq!(br, expected, "[{g}, {h}]");
        }
    }
}

#[test]
fn classical_duality_all_small_sizes() {
    for m in 0..=3 {
        for n in 0..=3 - m {
            if m + n == 0 {
                continue;
            }
            for k in 1..=3 {
                let cmp = gaudin_duality::gaudin::classical_duality(m, n, k);
                assert!(cmp.all_pass() && cmp.compared() == (m + n) * (m + n) * k * k);
            }
        }
    }
}
