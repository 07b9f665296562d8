use stringbv::algebra::{Element, Signature, Window};
use stringbv::bv::{
    apply_b, bracket, check_bv7, check_jacobi_antisym, check_poisson, BvModel, Identity, Kernel,
    Sweep,
};
use stringbv::expr::parse_element;
use stringbv::models::*;

fn el(sig: &Signature, s: &str) -> Element {
    parse_element(sig, s).unwrap()
}

fn model(l: usize, t: &[u64], odd: &[i64]) -> BvModel {
    build_lie_group_model(&LieGroupData::new(l, t.to_vec(), odd.to_vec()).unwrap()).unwrap()
}

fn br(m: &BvModel, a: &str, b: &str) -> String {
    let sig = m.signature();
    sig.format(&bracket(m, &el(sig, a), &el(sig, b)).unwrap())
}

#[test]
fn unit_is_killed_and_central() {
    for m in [
        model(1, &[], &[]),
        model(0, &[2], &[3]),
        model(1, &[], &[3]),
    ] {
        let sig = m.signature();
        assert!(apply_b(&m, &sig.unit()).unwrap().is_zero());
        for x in sig.basis_window(&Window::new(4)) {
            let x = Element::basis(x);
            assert!(bracket(&m, &sig.unit(), &x).unwrap().is_zero());
            assert!(bracket(&m, &x, &sig.unit()).unwrap().is_zero());
        }
    }
}

#[test]
fn circle_bracket() {
    let m = model(1, &[], &[]);
    assert_eq!(br(&m, "x1", "d1"), "x1");
    assert_eq!(br(&m, "x1^3", "d1"), "3*x1^3");
    assert_eq!(br(&m, "x1", "x1^2"), "0");
}

#[test]
fn primitive_bracket() {
    // {a⊗[M], 1⊗x} = (−1)^{|a|} 1⊗σ*(a)·x, |s⁻¹x₁| = 2
    let m = model(0, &[], &[3]);
    assert_eq!(br(&m, "sx1", "d1"), "1");
    let m = model(0, &[], &[3, 5]);
    assert_eq!(br(&m, "sx1", "d1*d2"), "d2");
    assert_eq!(br(&m, "sx2", "d1*d2"), "-d1");
    assert_eq!(br(&m, "sx1", "sx2"), "0");
}

#[test]
fn bracket_is_bilinear() {
    let m = model(1, &[], &[3]);
    let sig = m.signature();
    let a = el(sig, "2*x1*sx2 - 1/3*x1^-1*d1");
    let b = el(sig, "d1*d2 + 5*sx2^2*d2");
    let mut sum = Element::zero();
    for (ma, ca) in &a {
        for (mb, cb) in &b {
            let t = bracket(&m, &Element::basis(ma.clone()), &Element::basis(mb.clone())).unwrap();
            sum.add_scaled(&t, &(ca * cb));
        }
    }
    assert_eq!(bracket(&m, &a, &b).unwrap(), sum);
}

#[test]
fn seven_term_examples() {
    let m = model(0, &[], &[3]);
    let one = m.signature().unit();
    assert!(check_bv7(&m, &one, &one, &one).unwrap());
    let r = Sweep::exhaustive(&m, Window::new(6))
        .only(&[Identity::SevenTerm])
        .run()
        .unwrap();
    assert!(r.passed());
    assert!(r.get(Identity::SevenTerm).unwrap().checked > 0);

    let mutant = build_lie_group_model_mutated(
        &LieGroupData::new(1, vec![], vec![3]).unwrap(),
        Some(SignMutation {
            position: 2,
            scope: MutationScope::Both,
        }),
    )
    .unwrap();
    let r = Sweep::exhaustive(&mutant, Window::new(6).with_group_exponent(1))
        .only(&[Identity::SevenTerm])
        .run()
        .unwrap();
    let rep = r.get(Identity::SevenTerm).unwrap();
    assert!(rep.failed > 0);
    let cx = rep.counterexample.as_ref().unwrap();
    assert_eq!(cx.inputs.len(), 3);
    assert_ne!(cx.lhs, cx.rhs);
}

#[test]
fn poisson_examples() {
    let m = model(1, &[], &[3]);
    let sig = m.signature();
    let one = sig.unit();
    let a = el(sig, "x1*sx2*d1");
    let b = el(sig, "d2");
    assert!(check_poisson(&m, &one, &a, &b).unwrap());
    assert!(check_poisson(&m, &a, &b, &el(sig, "x1^-2*sx2")).unwrap());
    let r = Sweep::exhaustive(&m, Window::new(6).with_group_exponent(1))
        .only(&[Identity::Poisson, Identity::PoissonRewritten])
        .run()
        .unwrap();
    assert!(r.passed());
}

#[test]
fn jacobi_examples() {
    let m = model(0, &[], &[3, 5]);
    let sig = m.signature();
    let (a, b, c) = (el(sig, "sx1"), el(sig, "sx2"), el(sig, "d1*d2"));
    assert!(check_jacobi_antisym(&m, &a, &b, &c).unwrap());
    assert!(check_jacobi_antisym(&m, &c, &a, &el(sig, "d2")).unwrap());
    // |a| even forces {a,a} = 0
    assert!(bracket(&m, &a, &a).unwrap().is_zero());
    assert!(bracket(&m, &c, &c).unwrap().is_zero());

    let t = tensor_model(
        &circle_factor(1).unwrap(),
        &odd_sphere_factor(2, 3).unwrap(),
    )
    .unwrap();
    let r = Sweep::exhaustive(&t, Window::new(6).with_group_exponent(1))
        .only(&[Identity::Antisymmetry, Identity::Jacobi])
        .run()
        .unwrap();
    assert!(r.passed());
}

#[test]
fn degree_and_square_zero() {
    let m = model(1, &[3], &[3, 5]);
    let k = Kernel::new(&m);
    for x in m
        .signature()
        .basis_window(&Window::new(8).with_group_exponent(1))
    {
        assert!(k.check_degree(&x).unwrap().is_none());
        assert!(k.check_square_zero(&x).unwrap().is_none());
    }
}

#[test]
fn report_round_trips_through_json() {
    let m = model(0, &[], &[3]);
    let r = Sweep::exhaustive(&m, Window::new(4)).run().unwrap();
    let v: serde_json::Value = serde_json::to_value(&r).unwrap();
    assert_eq!(
        v["identities"].as_array().unwrap().len(),
        Identity::ALL.len()
    );
}
