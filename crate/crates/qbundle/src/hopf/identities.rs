//! The standard identities of the translation map and the braid relation.

use crate::check::{CheckOutcome, Tally};
use crate::error::Result;
use crate::ncalg::{Elem, TensorElem};

use super::galois::{left_mul, right_mul, GaloisExtension};

/// `Σ x'x ⊗ yy'` for `τ(h) = Σ x⊗y`, `τ(g) = Σ x'⊗y'`, with Koszul signs.
pub fn reversed_product(th: &TensorElem, tg: &TensorElem) -> Result<TensorElem> {
    th.outer(tg).move_factor(2, 0).contract(0)?.contract(1)
}

/// Runs the seven translation-map identities. `hs` are elements of `Ω•(H)`,
/// `as_` elements of `Ω•(A)` and `bs` coinvariants.
pub fn translation_identities(
    g: &GaloisExtension,
    hs: &[Elem],
    as_: &[Elem],
    bs: &[Elem],
) -> Result<Vec<CheckOutcome>> {
    let a = g.total();
    let one = Elem::one(a);
    let hopf = g.comodule().hopf();
    let mut t1 = Tally::new("tau-inverts-galois");
    let mut t2 = Tally::new("tau-coaction-retract");
    let mut t3 = Tally::new("tau-antimultiplicative");
    let mut t4 = Tally::new("tau-counit");
    let mut t5 = Tally::new("tau-right-colinear");
    let mut t6 = Tally::new("tau-left-colinear");
    let mut t7 = Tally::new("tau-centralizes-coinvariants");

    for h in hs {
        let Some(tau) = t1.record_result(g.translation(h), || format!("tau({h})")) else {
            continue;
        };
        let chi = g.galois(&tau)?;
        let want = TensorElem::pure(&[&one, h]);
        t1.record(chi == want, || format!("h = {h}: chi(tau(h)) = {chi}"));

        let m = tau.multiply_out()?;
        let eps = if h.form_degree() == Some(0) { hopf.counit(h)? } else { crate::ncalg::Scalar::zero() };
        let want = Elem::scalar(a, eps);
        t4.record(m == want, || format!("h = {h}: {m} vs {want}"));

        let d = hopf.coproduct(h)?;
        let lhs = d.apply_factor(0, |x| g.translation_monomial(x))?;
        let rhs = g.comodule().coaction_map().apply_at(&tau, 1)?;
        let ok = g.balanced_eq(&lhs, &rhs, 1)?;
        t5.record(ok, || format!("h = {h}: {lhs} vs {rhs}"));

        let lhs = g.comodule().coaction_map().apply_at(&tau, 0)?.move_factor(1, 2);
        let s = hopf.antipode_map().apply_at(&d, 0)?;
        let rhs = s.apply_factor(1, |x| g.translation_monomial(x))?.move_factor(0, 2);
        let ok = g.balanced_eq(&lhs, &rhs, 1)?;
        t6.record(ok, || format!("h = {h}: {lhs} vs {rhs}"));

        for b in bs {
            let l = left_mul(b, &tau)?;
            let r = right_mul(&tau, b)?;
            let ok = g.balanced_eq(&l, &r, 1)?;
            t7.record(ok, || format!("h = {h}, b = {b}: {l} vs {r}"));
        }
    }

    for x in hs {
        for y in hs {
            let lhs = g.translation(&x.mul(y)?)?;
            let rhs = reversed_product(&g.translation(x)?, &g.translation(y)?)?;
            let ok = g.balanced_eq(&lhs, &rhs, 1)?;
            t3.record(ok, || format!("h = {x}, g = {y}: {lhs} vs {rhs}"));
        }
    }

    for x in as_ {
        let d = g.comodule().coaction(x)?;
        let mut acc = TensorElem::zero(&[a.clone(), a.clone()]);
        for (k, c) in d.terms() {
            let x0 = Elem::monomial(a, k[0].clone());
            let tau = g.translation_monomial(&k[1])?;
            acc = &acc + &left_mul(&x0, &tau)?.scale(c);
        }
        let want = TensorElem::pure(&[&one, x]);
        let ok = g.balanced_eq(&acc, &want, 1)?;
        t2.record(ok, || format!("a = {x}: {acc}"));
    }

    Ok(vec![
        t1.finish(),
        t2.finish(),
        t3.finish(),
        t4.finish(),
        t5.finish(),
        t6.finish(),
        t7.finish(),
    ])
}

/// `σ₁σ₂σ₁ = σ₂σ₁σ₂` on triples, compared in `A⊗_B A⊗_B A`.
pub fn braid_relation(g: &GaloisExtension, elems: &[Elem]) -> Result<CheckOutcome> {
    let mut t = Tally::new("braid-relation");
    for x in elems {
        for y in elems {
            for z in elems {
                let w = TensorElem::pure(&[x, y, z]);
                let l = g.braiding_at(&g.braiding_at(&g.braiding_at(&w, 0)?, 1)?, 0)?;
                let r = g.braiding_at(&g.braiding_at(&g.braiding_at(&w, 1)?, 0)?, 1)?;
                let ok = g.balanced_eq(&l, &r, 2)?;
                t.record(ok, || format!("{x} (x) {y} (x) {z}: {l} vs {r}"));
            }
        }
    }
    Ok(t.finish())
}

/// `m∘σ(a⊗b) = ab` for `a` coinvariant, and `σ` fixes balanced tensors with a coinvariant right leg.
pub fn braiding_units(g: &GaloisExtension, elems: &[Elem], bs: &[Elem]) -> Result<CheckOutcome> {
    let mut t = Tally::new("braiding-units");
    for x in elems {
        for b in bs {
            let w = TensorElem::pure(&[b, x]);
            let s = g.braiding(&w)?;
            let want = TensorElem::pure(&[&b.mul(x)?, &Elem::one(g.total())]);
            let ok = g.balanced_eq(&s, &want, 1)?;
            t.record(ok, || format!("sigma({b} (x) {x}) = {s}"));
            let w = TensorElem::pure(&[x, b]);
            let s = g.braiding(&w)?;
            let m = s.multiply_out()?;
            let want = x.mul(b)?;
            t.record(m == want, || format!("m sigma({x} (x) {b}) = {m}"));
        }
    }
    Ok(t.finish())
}
