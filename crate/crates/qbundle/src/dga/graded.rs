use crate::check::{CheckOutcome, Tally};
use crate::error::Result;
use crate::hopf::HopfStructure;
use crate::ncalg::{Elem, MonomialWindow, TensorElem};

/// Hopf axioms of `Ω•(H)` plus `Δ•∘d = d⊗∘Δ•` and `ε•(Ω^{>0}) = 0`.
pub fn graded_hopf_check(hopf: &HopfStructure, window: &MonomialWindow) -> Result<Vec<CheckOutcome>> {
    let mut out = hopf.axiom_check(window)?;
    let pres = hopf.pres();
    let mut dcomm = Tally::new("coproduct-commutes-with-d");
    let mut eps = Tally::new("counit-kills-forms");
    for m in window.enumerate(pres)? {
        let w = Elem::monomial(pres, m.clone());
        let lhs = hopf.coproduct(&w.d()?)?;
        let rhs = hopf.coproduct(&w)?.differential()?;
        dcomm.record(lhs == rhs, || format!("w = {w}: {lhs} vs {rhs}"));
        if pres.form_degree(&m) > 0 {
            let e = hopf.counit(&w)?;
            eps.record(e.is_zero(), || format!("eps({w}) = {e}"));
        }
    }
    out.push(dcomm.finish());
    out.push(eps.finish());
    Ok(out)
}

/// `Δ(h)·d⊗Δ(g)·d⊗Δ(k)` computed with the Koszul-signed tensor product.
pub fn sweedler_differential_product(hopf: &HopfStructure, h: &Elem, g: &Elem, k: &Elem) -> Result<TensorElem> {
    let dh = hopf.coproduct(h)?;
    let dg = hopf.coproduct(g)?.differential()?;
    let dk = hopf.coproduct(k)?.differential()?;
    dh.mul(&dg)?.mul(&dk)
}

/// The four-term expansion written out with Sweedler legs and an explicit
/// sign `third_sign` on the term `h₁g₁dk₁⊗h₂d(g₂)k₂` (the correct sign is `-1`).
pub fn four_term_display(
    hopf: &HopfStructure,
    h: &Elem,
    g: &Elem,
    k: &Elem,
    third_sign: i64,
) -> Result<TensorElem> {
    let pres = hopf.pres();
    let two = [pres.clone(), pres.clone()];
    let mut out = TensorElem::zero(&two);
    let el = |m: &crate::ncalg::Monomial| Elem::monomial(pres, m.clone());
    for (hk, hc) in hopf.coproduct(h)?.terms() {
        for (gk, gc) in hopf.coproduct(g)?.terms() {
            for (kk, kc) in hopf.coproduct(k)?.terms() {
                let c = &(hc * gc) * kc;
                let (h1, h2) = (el(&hk[0]), el(&hk[1]));
                let (g1, g2) = (el(&gk[0]), el(&gk[1]));
                let (k1, k2) = (el(&kk[0]), el(&kk[1]));
                let t1 = TensorElem::pure(&[&h1.mul(&g1.d()?)?.mul(&k1.d()?)?, &h2.mul(&g2)?.mul(&k2)?]);
                let t2 = TensorElem::pure(&[&h1.mul(&g1.d()?)?.mul(&k1)?, &h2.mul(&g2)?.mul(&k2.d()?)?]);
                let t3 = TensorElem::pure(&[&h1.mul(&g1)?.mul(&k1.d()?)?, &h2.mul(&g2.d()?)?.mul(&k2)?]);
                let t4 = TensorElem::pure(&[&h1.mul(&g1)?.mul(&k1)?, &h2.mul(&g2.d()?)?.mul(&k2.d()?)?]);
                let s3 = crate::ncalg::Scalar::from_int(third_sign);
                let sum = &(&(&t1 + &t2) + &t3.scale(&s3)) + &t4;
                out = &out + &sum.scale(&c);
            }
        }
    }
    Ok(out)
}
