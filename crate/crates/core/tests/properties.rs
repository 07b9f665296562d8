use proptest::prelude::*;

use stringbv::algebra::{Element, GeneratorSpec, Monomial, Side, Signature, Window, WordFactor};
use stringbv::bv::Kernel;
use stringbv::hopf::HopfStructure;
use stringbv::linear::{rat, sign_pow};
use stringbv::models::{build_lie_group_model, LieGroupData};

fn loop_sig() -> Signature {
    Signature::new(vec![
        GeneratorSpec::free("x"),
        GeneratorSpec::torsion("y", 3),
        GeneratorSpec::poly("u", 2),
        GeneratorSpec::ext("e", 3, Side::Loop),
        GeneratorSpec::ext("f", 5, Side::Loop),
    ])
    .unwrap()
}

fn full_sig() -> Signature {
    let mut g = loop_sig().generators().to_vec();
    g.push(GeneratorSpec::ext("d1", -1, Side::Manifold));
    g.push(GeneratorSpec::ext("d2", -3, Side::Manifold));
    Signature::new(g).unwrap()
}

fn word_strategy(n: usize) -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0..n, -3i64..=3), 0..6)
}

/// A random monomial (possibly with a sign from reordering), zero if an exterior square occurs.
fn word_element(sig: &Signature, word: &[(usize, i64)]) -> Element {
    let factors: Vec<WordFactor> = word
        .iter()
        .map(|&(id, e)| {
            let g = &sig.generators()[id];
            let exponent = match g.kind {
                stringbv::algebra::GeneratorKind::GroupFree
                | stringbv::algebra::GeneratorKind::GroupTorsion => e,
                stringbv::algebra::GeneratorKind::PolyEven => e.abs(),
                stringbv::algebra::GeneratorKind::ExtOdd => e.rem_euclid(2),
            };
            WordFactor::Gen { id, exponent }
        })
        .collect();
    sig.normalize(rat(1), &factors).unwrap()
}

fn monomial(sig: &Signature, word: &[(usize, i64)]) -> Option<Monomial> {
    word_element(sig, word).keys().next().cloned()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graded_commutativity(w1 in word_strategy(7), w2 in word_strategy(7)) {
        let sig = full_sig();
        if let (Some(a), Some(b)) = (monomial(&sig, &w1), monomial(&sig, &w2)) {
            let ab = sig.multiply_monomials(&a, &b);
            let ba = sig.multiply_monomials(&b, &a);
            prop_assert_eq!(ab, ba.scaled_int(sign_pow(sig.degree(&a) * sig.degree(&b))));
        }
    }

    #[test]
    fn associativity(w1 in word_strategy(7), w2 in word_strategy(7), w3 in word_strategy(7)) {
        let sig = full_sig();
        let (a, b, c) = (word_element(&sig, &w1), word_element(&sig, &w2), word_element(&sig, &w3));
        prop_assert_eq!(
            sig.multiply(&sig.multiply(&a, &b), &c),
            sig.multiply(&a, &sig.multiply(&b, &c))
        );
    }

    #[test]
    fn degree_additivity(w1 in word_strategy(7), w2 in word_strategy(7)) {
        let sig = full_sig();
        if let (Some(a), Some(b)) = (monomial(&sig, &w1), monomial(&sig, &w2)) {
            for m in sig.multiply_monomials(&a, &b).keys() {
                prop_assert_eq!(sig.degree(m), sig.degree(&a) + sig.degree(&b));
            }
        }
    }

    #[test]
    fn normalize_idempotent(w in word_strategy(7)) {
        let sig = full_sig();
        let e = word_element(&sig, &w);
        for (m, c) in &e {
            let again: Vec<WordFactor> = sig
                .word_names(m)
                .iter()
                .map(|(n, k)| WordFactor::Gen {
                    id: sig.generators().iter().position(|g| &g.name == n).unwrap(),
                    exponent: *k,
                })
                .collect();
            prop_assert_eq!(sig.normalize(c.clone(), &again).unwrap(), Element::term(m.clone(), c.clone()));
        }
    }

    #[test]
    fn coassociativity(w in word_strategy(5)) {
        let sig = loop_sig();
        let h = HopfStructure::new(&sig);
        let a = word_element(&sig, &w);
        let d = h.coproduct(&a).unwrap();
        prop_assert_eq!(h.coproduct_left(&d).unwrap(), h.coproduct_right(&d).unwrap());
    }

    #[test]
    fn counit_laws(w in word_strategy(5)) {
        let sig = loop_sig();
        let h = HopfStructure::new(&sig);
        let a = word_element(&sig, &w);
        let d = h.coproduct(&a).unwrap();
        prop_assert_eq!(h.right_counit(&d).unwrap(), a.clone());
        prop_assert_eq!(h.left_counit(&d).unwrap(), a);
    }

    #[test]
    fn coproduct_is_an_algebra_map(w1 in word_strategy(5), w2 in word_strategy(5)) {
        let sig = loop_sig();
        let h = HopfStructure::new(&sig);
        let (a, b) = (word_element(&sig, &w1), word_element(&sig, &w2));
        let lhs = h.coproduct(&sig.multiply(&a, &b)).unwrap();
        let rhs = h.tensor_multiply(&h.coproduct(&a).unwrap(), &h.coproduct(&b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

fn su3_u2_basis() -> Vec<(stringbv::bv::BvModel, Vec<Monomial>)> {
    [
        LieGroupData::new(0, vec![], vec![3, 5]).unwrap(),
        LieGroupData::new(1, vec![2], vec![3]).unwrap(),
    ]
    .into_iter()
    .map(|d| {
        let m = build_lie_group_model(&d).unwrap();
        let basis = m
            .signature()
            .basis_window(&Window::new(14).with_group_exponent(3));
        (m, basis)
    })
    .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    // Triples beyond the exhaustive window.
    #[test]
    fn bv_identities_on_wide_window(which in 0usize..2, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(), k in any::<prop::sample::Index>()) {
        let models = su3_u2_basis();
        let (m, basis) = &models[which];
        let kern = Kernel::new(m);
        let (a, b, c) = (i.get(basis), j.get(basis), k.get(basis));
        prop_assert!(kern.check_square_zero(a).unwrap().is_none());
        prop_assert!(kern.check_bv7(a, b, c).unwrap().is_none());
        prop_assert!(kern.check_poisson(a, b, c).unwrap().is_none());
        prop_assert!(kern.check_antisymmetry(a, b).unwrap().is_none());
        prop_assert!(kern.check_jacobi(a, b, c).unwrap().is_none());
    }
}
