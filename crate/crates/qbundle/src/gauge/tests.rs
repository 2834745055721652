use super::*;
use crate::check::CheckOutcome;
use crate::instances::{self, InstanceBundle};
use crate::ncalg::{BasisRuleMap, Elem, ExtensionMode, MonomialWindow, Scalar, TensorElem};
use std::collections::BTreeMap;

fn exact(b: &InstanceBundle) -> ExactForms {
    ExactForms::new(b.total(), &b.witnesses).unwrap()
}

fn all_ok(outs: &[CheckOutcome]) {
    for o in outs {
        assert!(o.ok(), "{}: {:?}", o.check, o.witness);
    }
}

fn failed(outs: &[CheckOutcome], name: &str) -> bool {
    outs.iter().any(|o| o.check == name && !o.ok())
}

fn torus() -> InstanceBundle {
    instances::torus_bundle().unwrap()
}

#[test]
fn torus_gauge_shifts_connection_by_closed_basic_form() {
    let b = torus();
    let s = connection_from_template(&b, "s", &[0, 0]).unwrap();
    assert_eq!(s.images()[0], b.eval("u^-1*du").unwrap());
    for n in -2..=2i64 {
        let f = gauge_from_template(&b, "f", &[n]).unwrap();
        let big = to_vertical(&f).dga_extension(&exact(&b));
        let got = gauge_act(&big, &s).unwrap();
        let want = b
            .eval(&format!("u^-1*du + {n}*u*v*d(v^-1*u^-1)"))
            .unwrap()
            .scale(&Scalar::q_pow((n * (1 - n)) as i32));
        assert_eq!(got.images()[0], want, "n = {n}");
    }
}

#[test]
fn torus_gauge_inverse_is_reversed_product() {
    let b = torus();
    for n in -2..=2i64 {
        let f = gauge_from_template(&b, "f", &[n]).unwrap();
        let t = b.eval_structure("t").unwrap();
        let want = b.eval(&format!("v^{n}*u^{n}")).unwrap();
        assert_eq!(f.eval_inverse(&t).unwrap(), want);
    }
}

#[test]
fn non_coinvariant_image_is_rejected() {
    let b = torus();
    let h = b.structure_pres();
    let t = b.eval_structure("t").unwrap();
    let ti = b.eval_structure("t^-1").unwrap();
    let key = |e: &Elem| e.terms().keys().next().unwrap().clone();
    let mut rules = BTreeMap::new();
    rules.insert(key(&t), TensorElem::from_elem(&b.eval("u").unwrap()));
    rules.insert(key(&ti), TensorElem::from_elem(&b.eval("u^-1").unwrap()));
    let f = BasisRuleMap::table("bad", h, &[b.total().clone()], ExtensionMode::AlgebraMorphism, rules);
    match make_gauge("bad", &b.galois, f, None, &b.window) {
        Err(crate::error::Error::Axiom(msg)) => assert!(msg.contains("gauge-ad-colinear"), "{msg}"),
        other => panic!("expected an axiom failure, got {other:?}"),
    }
}

#[test]
fn unit_gauge_is_identity() {
    let b = torus();
    let e = GaugeTransformation::unit(&b.galois);
    all_ok(&e.validate(&b.window).unwrap());
    let big = to_vertical(&e);
    for a in group::total_window(b.total(), &b.window).unwrap() {
        assert_eq!(big.apply(&a).unwrap(), a);
    }
    let f = gauge_from_template(&b, "f", &[2]).unwrap();
    let t = b.eval_structure("t^3").unwrap();
    assert_eq!(gauge_mul(&e, &f).eval(&t).unwrap(), f.eval(&t).unwrap());
    assert_eq!(gauge_mul(&f, &gauge_inv(&f)).eval(&t).unwrap(), Elem::one(b.total()));
}

#[test]
fn torus_gauge_products() {
    let b = torus();
    let t = b.eval_structure("t").unwrap();
    for n in -2..=2i64 {
        for m in -2..=2i64 {
            let fg = gauge_mul(&gauge_from_template(&b, "f", &[n]).unwrap(), &gauge_from_template(&b, "f", &[m]).unwrap());
            all_ok(&fg.validate(&MonomialWindow::new(2)).unwrap());
            let want = b
                .eval(&format!("u^{}*v^{}", -(n + m), -(n + m)))
                .unwrap()
                .scale(&Scalar::q_pow((n * m) as i32));
            assert_eq!(fg.eval(&t).unwrap(), want, "n = {n}, m = {m}");
        }
    }
}

#[test]
fn vertical_automorphisms_are_valid() {
    let b = torus();
    for n in -2..=2i64 {
        let f = gauge_from_template(&b, "f", &[n]).unwrap();
        all_ok(&to_vertical(&f).validate(&b.window).unwrap());
    }
}

fn gauges(b: &InstanceBundle) -> Vec<GaugeTransformation> {
    let mut out: Vec<GaugeTransformation> =
        [0i64, 1, -2].iter().map(|m| gauge_from_template(b, "phase", &[*m]).unwrap()).collect();
    if b.gauge_template("f").is_ok() {
        out.extend([-1i64, 2].iter().map(|n| gauge_from_template(b, "f", &[*n]).unwrap()));
    }
    out
}

#[test]
fn theta_round_trips_on_every_instance() {
    for name in ["torus", "su_q2", "smash_w", "hopf_u1"] {
        let b = instances::load(name).unwrap();
        let gs = gauges(&b);
        assert!(gs.len() >= 3);
        let win = MonomialWindow::new(b.window.bound.min(2));
        let outs = theta_round_trip_check(&gs, &win).unwrap();
        assert_eq!(outs.len(), 3);
        for o in &outs {
            assert!(o.ok(), "{name} {}: {:?}", o.check, o.witness);
        }
    }
}

#[test]
fn literal_extension_is_a_dga_morphism_only_for_trivial_gauge() {
    let b = torus();
    let win = MonomialWindow::new(2).with_forms(1);
    for n in -2..=2i64 {
        let big = to_vertical(&gauge_from_template(&b, "f", &[n]).unwrap()).dga_extension(&exact(&b));
        let o = big.dga_morphism_check(&win).unwrap();
        assert_eq!(o.ok(), n == 0, "n = {n}: {:?}", o.witness);
    }
}

#[test]
fn graded_gauges_invert_under_convolution() {
    let b = torus();
    let ex = ExactForms::new(b.structure_pres(), &BTreeMap::new()).unwrap();
    let win = MonomialWindow::new(2);
    for n in -2..=2i64 {
        let g = GradedGauge::dga_extension(&gauge_from_template(&b, "f", &[n]).unwrap(), &ex);
        all_ok(&g.convolution_check(&win).unwrap());
        all_ok(&[g.colinearity_check(&win).unwrap()]);
        all_ok(&[graded_round_trip_check(&g, &win).unwrap()]);
        let dt = b.eval_structure("d(t)").unwrap();
        let t = b.eval_structure("t").unwrap();
        let fi = g.base.eval_inverse(&t).unwrap();
        let want = -&fi.mul(&g.apply(&dt).unwrap()).unwrap().mul(&fi).unwrap();
        assert_eq!(g.inverse(&dt).unwrap(), want, "n = {n}");
    }
}

#[test]
fn graded_vertical_moves_connection_without_phase() {
    let b = torus();
    let ex = ExactForms::new(b.structure_pres(), &BTreeMap::new()).unwrap();
    let win = MonomialWindow::new(2).with_forms(1);
    for n in -2..=2i64 {
        let g = GradedGauge::dga_extension(&gauge_from_template(&b, "f", &[n]).unwrap(), &ex);
        let big = graded_vertical(&g);
        all_ok(&big.validate(&win).unwrap());
        let s = connection_from_template(&b, "s", &[0, 0]).unwrap();
        let moved = gauge_act(&big, &s).unwrap();
        let want = b.eval(&format!("u^-1*du + u^{n}*v^{n}*d(u^{m}*v^{m})", m = -n)).unwrap();
        assert_eq!(moved.images()[0], want, "n = {n}");
    }
}

#[test]
fn torus_connections_and_flatness() {
    let b = torus();
    let win = MonomialWindow::new(4);
    for k in -3..=3i64 {
        for l in -3..=3i64 {
            let s = connection_from_template(&b, "s", &[k, l]).unwrap();
            all_ok(&s.check(&b.window).unwrap());
            all_ok(&[flatness_check(&s, &win).unwrap()]);
        }
    }
}

#[test]
fn second_torus_family_needs_a_sign() {
    let b = torus();
    let calc = b.calculus().unwrap();
    for (k, l) in [(0i64, 0i64), (1, -2), (3, 3)] {
        let src = format!("v^-1*dv + u^{k}*v^{k}*d(u^{l}*v^{l})");
        let literal = ConnectionForm::new("r", &calc, vec![b.eval(&src).unwrap()]).unwrap();
        let outs = literal.check(&b.window).unwrap();
        assert!(failed(&outs, "connection-vertical"), "{src}");
        assert!(!failed(&outs, "connection-colinear"), "{src}");
        all_ok(&[flatness_check(&literal, &MonomialWindow::new(4)).unwrap()]);
        let r = connection_from_template(&b, "r", &[k, l]).unwrap();
        all_ok(&r.check(&b.window).unwrap());
        all_ok(&[flatness_check(&r, &MonomialWindow::new(4)).unwrap()]);
    }
}

#[test]
fn mixed_forms_fail_verticality() {
    let b = torus();
    let calc = b.calculus().unwrap();
    for m in [-2i64, -1, 1, 2] {
        for n in [-2i64, -1, 1, 2] {
            for src in [format!("u^{m}*d(v^{n})"), format!("v^{m}*d(u^{n})")] {
                let img = b.eval(&src).unwrap();
                let s = ConnectionForm::new("x", &calc, vec![img]).unwrap();
                assert!(failed(&s.check(&b.window).unwrap(), "connection-vertical"), "{src}");
            }
        }
    }
}

#[test]
fn convex_combinations_are_connections() {
    let b = torus();
    let s1 = connection_from_template(&b, "s", &[1, -1]).unwrap();
    let s2 = connection_from_template(&b, "s", &[2, 3]).unwrap();
    for t in [Scalar::zero(), Scalar::from_ratio(1, 2), Scalar::one(), Scalar::from_ratio(-3, 4)] {
        let c = convex_combine(&s1, &s2, &t).unwrap();
        all_ok(&c.check(&b.window).unwrap());
        all_ok(&[flatness_check(&c, &MonomialWindow::new(3)).unwrap()]);
    }
    assert!(convex_combine(&s1, &s2, &Scalar::q_pow(1)).is_err());
}

#[test]
fn vertical_part_of_connection_is_maurer_cartan() {
    for name in ["torus", "su_q2", "smash_w", "hopf_u1"] {
        let b = instances::load(name).unwrap();
        let calc = b.calculus().unwrap();
        let template = b.connection_template("s").map(|_| "s").unwrap_or("e");
        let args: Vec<i64> = if name == "torus" { vec![0, 0] } else { vec![] };
        let s = connection_from_template(&b, template, &args).unwrap();
        let v = calc.vertical_part(&s.images()[0]).unwrap();
        let want = TensorElem::pure(&[&Elem::one(b.total()), &b.eval_structure("t^-1*d(t)").unwrap()]);
        assert_eq!(v, want, "{name}");
    }
}

#[test]
fn projections_and_strongness() {
    for name in ["torus", "smash_w", "hopf_u1"] {
        let b = instances::load(name).unwrap();
        let calc = b.calculus().unwrap();
        let args: Vec<i64> = if name == "torus" { vec![1, 1] } else { vec![] };
        let s = connection_from_template(&b, "s", &args).unwrap();
        let conn = connection_from_form(&s, &exact(&b));
        let win = MonomialWindow::new(2);
        all_ok(&conn.check(&win).unwrap());
        all_ok(&[is_strong(|w| conn.project(w), &calc, &win).unwrap()]);
        if name != "hopf_u1" {
            let zero = is_strong(|w| Ok(Elem::zero(w.pres())), &calc, &win).unwrap();
            assert!(!zero.ok(), "{name}: the zero projection should not be strong");
        }
    }
}

#[test]
fn su_q2_connection() {
    let b = instances::quantum_hopf_fibration().unwrap();
    let calc = b.calculus().unwrap();
    let s = connection_from_template(&b, "e", &[]).unwrap();
    all_ok(&s.check(&b.window).unwrap());
    let conn = connection_from_form(&s, &exact(&b));
    let win = MonomialWindow::new(1);
    all_ok(&conn.check(&win).unwrap());
    all_ok(&[is_strong(|w| conn.project(w), &calc, &win).unwrap()]);
    let r = curvature_form(&s, &b.eval_structure("t").unwrap()).unwrap();
    assert_eq!(r, b.eval("d(e0)").unwrap());
}

#[test]
fn covariant_derivative_on_torus() {
    let b = torus();
    let calc = b.calculus().unwrap();
    let e = AssociatedElement::new(&calc, vec![-1], vec![b.eval("u").unwrap()]).unwrap();
    assert!(AssociatedElement::new(&calc, vec![1], vec![b.eval("u").unwrap()]).is_err());
    let s = connection_from_template(&b, "s", &[0, 0]).unwrap();
    let conn = connection_from_form(&s, &exact(&b));
    assert!(covariant_derivative(&conn, &e).unwrap()[0].is_zero());
    let bs = calc.comodule().coinvariant_basis(&MonomialWindow::new(2)).unwrap();
    all_ok(&[covariant_leibniz_check(&conn, &e, &bs).unwrap()]);
    assert!(curvature_nabla(&s, &e).unwrap()[0].is_zero());

    let other = connection_from_template(&b, "s", &[1, 1]).unwrap();
    let conn2 = connection_from_form(&other, &exact(&b));
    assert!(!covariant_derivative(&conn2, &e).unwrap()[0].is_zero());
}

#[test]
fn curvature_is_gauge_equivariant() {
    let b = torus();
    let win = MonomialWindow::new(3);
    let s = connection_from_template(&b, "s", &[1, 2]).unwrap();
    for m in [-1i64, 0, 2] {
        let big = to_vertical(&gauge_from_template(&b, "phase", &[m]).unwrap()).dga_extension(&exact(&b));
        all_ok(&[curvature_equivariance_check(&big, &s, &win).unwrap()]);
    }
    for n in [0i64, 1] {
        let big = to_vertical(&gauge_from_template(&b, "f", &[n]).unwrap()).dga_extension(&exact(&b));
        all_ok(&[curvature_equivariance_check(&big, &s, &win).unwrap()]);
    }
}

#[test]
fn gauge_action_composes() {
    let b = torus();
    let ex = ExactForms::new(b.structure_pres(), &BTreeMap::new()).unwrap();
    let s = connection_from_template(&b, "s", &[1, 0]).unwrap();
    for n in -2..=2i64 {
        for m in -1..=1i64 {
            let f = gauge_from_template(&b, "f", &[n]).unwrap();
            let g = gauge_from_template(&b, "f", &[m]).unwrap();
            let (f, g) = (GradedGauge::dga_extension(&f, &ex), GradedGauge::dga_extension(&g, &ex));
            let lhs = gauge_act(&graded_vertical(&graded_mul(&f, &g)), &s).unwrap();
            let rhs = gauge_act(&graded_vertical(&g), &gauge_act(&graded_vertical(&f), &s).unwrap()).unwrap();
            assert_eq!(lhs.images(), rhs.images(), "n = {n}, m = {m}");
        }
    }
}
