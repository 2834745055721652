use super::*;
use crate::cli::expr::eval_elem;
use crate::cli::instance_file::InstanceFile;
use crate::instances::{self, HopfSpace};
use crate::ncalg::{Elem, MonomialWindow, Scalar};

fn failed(outs: &[crate::check::CheckOutcome], name: &str) -> bool {
    outs.iter().any(|o| o.check == name && !o.ok())
}

#[test]
fn wrong_commutation_rule_is_caught() {
    let text = instances::builtin::text("torus").unwrap().replace("rel dv*u = q*u*dv", "rel dv*u = u*dv");
    let b = instances::from_text(&text, None).unwrap();
    let outs = dga_axiom_check(b.total(), &MonomialWindow::new(1).with_forms(1)).unwrap();
    assert!(failed(&outs, "relations-closed-under-d"), "{outs:?}");
}

#[test]
fn missing_witness_fails_generation() {
    let text = "hopf bad\nparam q\ngen t invertible\nform e\nrel e*t = t*e\nd t = 0\ncoproduct t = t (x) t\ncoproduct e = (e (x) t) + (t (x) e)\ncounit t = 1\nantipode t = t^-1\nantipode e = -t^-2*e\n";
    let h = HopfSpace::from_file(&InstanceFile::parse(text).unwrap()).unwrap();
    let o = generation_check(h.pres(), &MonomialWindow::new(2)).unwrap();
    assert!(!o.ok());
}

#[test]
fn maurer_cartan_form_of_the_circle() {
    for name in ["u1", "u1q"] {
        let h = instances::load_hopf(name, None).unwrap();
        let hopf = &h.hopf;
        let e = |src: &str| eval_elem(src, h.pres()).unwrap();
        let t = e("t");
        assert_eq!(cartan_maurer(hopf, &t).unwrap(), e("t^-1*dt"));
        let t3 = e("t^3");
        let w = cartan_maurer(hopf, &t3).unwrap();
        let basis = [e("t^-1*dt")];
        let c = invariant_coordinates(&w, &basis).unwrap();
        let want = if name == "u1" { Scalar::from_int(3) } else { Scalar::from_int(1) + Scalar::q_pow(2) + Scalar::q_pow(4) };
        assert_eq!(c, vec![want], "{name}");
        let o = cartan_maurer_equation_check(hopf, &MonomialWindow::new(4)).unwrap();
        assert!(o.ok(), "{name}: {:?}", o.witness);
    }
}

#[test]
fn graded_hopf_axioms_hold() {
    for name in ["u1", "u1q"] {
        let h = instances::load_hopf(name, None).unwrap();
        for o in graded_hopf_check(&h.hopf, &MonomialWindow::new(2).with_forms(1)).unwrap() {
            assert!(o.ok(), "{name} {}: {:?}", o.check, o.witness);
        }
    }
}

#[test]
fn four_term_expansion_needs_the_sign() {
    let h = instances::load_hopf("u1", None).unwrap();
    let hopf = &h.hopf;
    let window = h.grouplike_window(2).unwrap();
    for x in &window {
        for y in &window {
            for z in &window {
                let engine = sweedler_differential_product(hopf, x, y, z).unwrap();
                assert_eq!(engine, four_term_display(hopf, x, y, z, -1).unwrap(), "{x} {y} {z}");
                if !y.d().unwrap().is_zero() && !z.d().unwrap().is_zero() {
                    let plus = four_term_display(hopf, x, y, z, 1).unwrap();
                    assert_ne!(engine, plus, "{x} {y} {z}");
                }
            }
        }
    }
}

#[test]
fn torus_prolongation() {
    let text = instances::builtin::text("torus").unwrap();
    let first: String = text
        .lines()
        .filter(|l| !matches!(*l, "rel du*du = 0" | "rel dv*du = -q*du*dv" | "rel dv*dv = 0"))
        .map(|l| if l == "cap 2" { "cap 1" } else { l })
        .collect::<Vec<_>>()
        .join("\n");
    let b = instances::from_text(&first, None).unwrap();
    let p = prolong_relations(b.total(), &b.witnesses).unwrap();
    let full = instances::torus_bundle().unwrap();
    let pres = full.total();
    assert_eq!(p.relations.len(), 3, "{p:?}");
    for (a, c, rhs) in &p.relations {
        let lhs = Elem::word(pres, &[(*a, 1), (*c, 1)]).unwrap();
        let mut r = Elem::zero(pres);
        for (w, s) in rhs {
            r = &r + &Elem::word(pres, w).unwrap().scale(s);
        }
        assert_eq!(lhs, r, "{} * {}", pres.gen(*a).name, pres.gen(*c).name);
    }
    assert!(p.differentials.iter().all(|(_, d)| d.is_empty()));
}
