//! The graded braiding `σ•` and the graded translation map.

use crate::check::{CheckOutcome, Tally};
use crate::error::{Error, Result};
use crate::ncalg::linsolve::tensor_vec;
use crate::ncalg::{BasisRuleMap, Elem, Scalar, TensorElem};

use super::BundleCalculus;

/// `∧∘σ• = ∧` on all pairs.
pub fn wedge_braiding_check(calc: &BundleCalculus, elems: &[Elem]) -> Result<CheckOutcome> {
    let g = calc.galois();
    let mut t = Tally::new("graded-braiding-wedge");
    for x in elems {
        for y in elems {
            let s = g.braiding(&TensorElem::pure(&[x, y]))?;
            let lhs = s.multiply_out()?;
            let rhs = x.mul(y)?;
            t.record(lhs == rhs, || format!("{x} (x) {y}: {lhs} vs {rhs}"));
        }
    }
    Ok(t.finish())
}

/// `σ₁σ₂σ₁ = σ₂σ₁σ₂` on triples of forms, compared after the graded untwist.
pub fn graded_braid_relation(calc: &BundleCalculus, elems: &[Elem]) -> Result<CheckOutcome> {
    let mut out = crate::hopf::braid_relation(calc.galois(), elems)?;
    out.check = "graded-braid-relation".into();
    Ok(out)
}

/// Scalar `c` with `x = c·y`, if any.
fn proportional(x: &TensorElem, y: &TensorElem) -> Option<Scalar> {
    let (vx, vy) = (tensor_vec(x), tensor_vec(y));
    let (k, b) = vy.iter().next()?;
    let c = vx.get(k)?.div(b)?;
    let scaled: std::collections::BTreeMap<_, _> = vy.iter().map(|(k, v)| (k.clone(), v.mul(&c))).collect();
    if scaled == vx {
        c.to_scalar()
    } else {
        None
    }
}

/// On generator pairs: `σ(x⊗y)` is a multiple of `y⊗x` and `σ² = id`, in `A⊗_B A`.
pub fn torus_generator_braiding(calc: &BundleCalculus, gens: &[Elem]) -> Result<Vec<CheckOutcome>> {
    let g = calc.galois();
    let mut square = Tally::new("braiding-squares-to-identity");
    let mut swap = Tally::new("braiding-maps-generators-to-generators");
    for x in gens {
        for y in gens {
            let w = TensorElem::pure(&[x, y]);
            let s = g.braiding(&w)?;
            let ss = g.braiding(&s)?;
            square.record(g.balanced_eq(&ss, &w, 1)?, || format!("sigma^2({x} (x) {y}) = {ss}"));
            let us = g.untwist(&s)?;
            let target = g.untwist(&TensorElem::pure(&[y, x]))?;
            let ok = proportional(&us, &target).is_some();
            swap.record(ok, || format!("sigma({x} (x) {y}) = {s} is not a multiple of {y} (x) {x}"));
        }
    }
    Ok(vec![square.finish(), swap.finish()])
}

/// The closed smash-product braiding
/// `σ•((ω^B#ω^H)⊗(η^B#η^H)) = ± (ω^B#ω_[1])∧(η^B#η^H∧S•(ω_[2])) ⊗ (1#ω_[3])`,
/// sign `(-1)^{(|η^B|+|η^H|)(|ω_[2]|+|ω_[3]|)}`, against the generic `σ•`.
/// `parts` lists pairs `(ω^B, ω^H)` with `ω^B ∈ Ω•(B#H)` and `ω^H ∈ Ω•(H)`.
pub fn smash_braiding_display(
    calc: &BundleCalculus,
    inclusion: &BasisRuleMap,
    parts: &[(Elem, Elem)],
) -> Result<CheckOutcome> {
    let a = calc.total();
    let hp = calc.structure();
    let hopf = calc.hopf();
    let inc = |h: &Elem| inclusion.apply_elem(h);
    let mut t = Tally::new("smash-braiding-display");
    for (wb, wh) in parts {
        let w = wb.mul(&inc(wh)?)?;
        for (eb, eh) in parts {
            let e = eb.mul(&inc(eh)?)?;
            let generic = calc.galois().braiding(&TensorElem::pure(&[&w, &e]))?;
            let deg_eta = e.form_degree().ok_or_else(|| Error::Other("inhomogeneous form".into()))?;
            let mut display = TensorElem::zero(&[a.clone(), a.clone()]);
            for (k, c) in hopf.iterated_coproduct(wh, 3)?.terms() {
                let legs: Vec<Elem> = k.iter().map(|m| Elem::monomial(hp, m.clone())).collect();
                let odd = (deg_eta * (hp.form_degree(&k[1]) + hp.form_degree(&k[2]))) % 2 == 1;
                let left = wb.mul(&inc(&legs[0])?)?.mul(&e)?.mul(&inc(&hopf.antipode(&legs[1])?)?)?;
                let term = TensorElem::pure(&[&left, &inc(&legs[2])?]);
                display = &display + &term.scale(&if odd { -c.clone() } else { c.clone() });
            }
            let ok = calc.galois().balanced_eq(&generic, &display, 1)?;
            t.record(ok, || format!("({w}) (x) ({e}): generic {generic} vs display {display}"));
        }
    }
    Ok(t.finish())
}

/// The translation map in use (closed form for cleft extensions) agrees with
/// the window solution of `χ•(x) = 1⊗h`.
pub fn cleft_translation_check(calc: &BundleCalculus, hs: &[Elem]) -> Result<CheckOutcome> {
    let g = calc.galois();
    let mut t = Tally::new("translation-matches-window-solve");
    for h in hs {
        for m in h.terms().keys() {
            let closed = g.translation_monomial(m)?;
            let solved = g.solve_translation(m)?;
            let ok = g.balanced_eq(&closed, &solved, 1)?;
            t.record(ok, || format!("tau({}): {closed} vs {solved}", h.pres().render_monomial(m)));
        }
    }
    Ok(t.finish())
}

/// `χ•(x) = x'∧x''₀⊗x''₁`, the graded Galois map on representatives.
pub fn graded_galois(calc: &BundleCalculus, x: &TensorElem) -> Result<TensorElem> {
    calc.galois().galois(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;

    fn elems(b: &instances::InstanceBundle, srcs: &[&str]) -> Vec<Elem> {
        srcs.iter().map(|s| b.eval(s).unwrap()).collect()
    }

    #[test]
    fn torus_graded_braiding() {
        let b = instances::torus_bundle().unwrap();
        let c = b.calculus().unwrap();
        let es = elems(&b, &["u", "v", "u^-1", "d(u)", "d(v)", "u*v", "u*d(v)"]);
        assert!(wedge_braiding_check(&c, &es).unwrap().ok());
        assert!(graded_braid_relation(&c, &es[..5]).unwrap().ok());
        let gens = elems(&b, &["u", "v", "u^-1", "v^-1"]);
        for o in torus_generator_braiding(&c, &gens).unwrap() {
            assert!(o.ok(), "{}: {:?}", o.check, o.witness);
        }
    }

    #[test]
    fn torus_braiding_on_forms_squares_to_identity() {
        let b = instances::torus_bundle().unwrap();
        let c = b.calculus().unwrap();
        let gens = elems(&b, &["u", "v", "d(u)", "d(v)"]);
        for o in torus_generator_braiding(&c, &gens).unwrap() {
            assert!(o.ok(), "{}: {:?}", o.check, o.witness);
        }
    }

    #[test]
    fn smash_display_matches_generic() {
        let b = instances::smash_bundle().unwrap();
        let c = b.calculus().unwrap();
        let h = b.structure_pres();
        let inc = b.galois.cleaving().unwrap().clone();
        let one_h = Elem::one(h);
        let one = Elem::one(b.total());
        let parts = vec![
            (b.eval("w").unwrap(), one_h.clone()),
            (one.clone(), b.eval_structure("t").unwrap()),
            (b.eval("w^-1").unwrap(), b.eval_structure("t^2").unwrap()),
            (b.eval("d(w)").unwrap(), b.eval_structure("t").unwrap()),
            (b.eval("w").unwrap(), b.eval_structure("d(t)").unwrap()),
            (b.eval("d(w)").unwrap(), b.eval_structure("t^-1*d(t)").unwrap()),
        ];
        let o = smash_braiding_display(&c, &inc, &parts).unwrap();
        assert!(o.ok(), "{:?}", o.witness);
    }

    #[test]
    fn closed_translations_match_solver() {
        for name in ["torus", "hopf_u1", "smash_w"] {
            let b = instances::load(name).unwrap();
            let c = b.calculus().unwrap();
            let hs: Vec<Elem> = ["t", "t^-1", "t^2", "d(t)", "t^-1*d(t)"].iter().map(|s| b.eval_structure(s).unwrap()).collect();
            let o = cleft_translation_check(&c, &hs).unwrap();
            assert!(o.ok(), "{name}: {:?}", o.witness);
        }
    }
}
