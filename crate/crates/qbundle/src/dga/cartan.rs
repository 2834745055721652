use std::sync::Arc;

use crate::check::{CheckOutcome, Tally};
use crate::error::{Error, Result};
use crate::hopf::HopfStructure;
use crate::ncalg::{Echelon, Elem, MonomialWindow, Scalar};

use super::axioms::vec_of;

/// `ϖ(h) = S(h₁)d(h₂)`.
pub fn cartan_maurer(hopf: &HopfStructure, h: &Elem) -> Result<Elem> {
    let d = hopf.coproduct(h)?;
    let pres = hopf.pres();
    let mut out = Elem::zero(pres);
    for (k, c) in d.terms() {
        let s = hopf.antipode(&Elem::monomial(pres, k[0].clone()))?;
        let dh = Elem::monomial(pres, k[1].clone()).d()?;
        out = &out + &s.mul(&dh)?.scale(c);
    }
    Ok(out)
}

/// Coordinates of a 1-form in a basis of left-invariant forms, with scalar coefficients.
pub fn invariant_coordinates(omega: &Elem, basis: &[Elem]) -> Result<Vec<Scalar>> {
    let mut ech = Echelon::new();
    for b in basis {
        ech.insert(vec_of(b));
    }
    let combo = ech
        .express(&vec_of(omega))
        .ok_or_else(|| Error::NoSolution(format!("{omega} is not in the span of the invariant basis")))?;
    (0..basis.len())
        .map(|i| match combo.get(&i) {
            None => Ok(Scalar::zero()),
            Some(c) => c
                .to_scalar()
                .ok_or_else(|| Error::NoSolution(format!("non-Laurent coordinate for {omega}"))),
        })
        .collect()
}

/// `dϖ(π_ε(h)) + ϖ(π_ε(h₁))∧ϖ(π_ε(h₂)) = 0` on the degree-0 window.
pub fn cartan_maurer_equation_check(hopf: &Arc<HopfStructure>, window: &MonomialWindow) -> Result<CheckOutcome> {
    let pres = hopf.pres();
    let mut t = Tally::new("cartan-maurer-equation");
    for m in window.clone().with_forms(0).enumerate(pres)? {
        let h = Elem::monomial(pres, m);
        let first = cartan_maurer(hopf, &hopf.pi_eps(&h)?)?.d()?;
        let mut second = Elem::zero(pres);
        for (k, c) in hopf.coproduct(&h)?.terms() {
            let a = cartan_maurer(hopf, &hopf.pi_eps(&Elem::monomial(pres, k[0].clone()))?)?;
            let b = cartan_maurer(hopf, &hopf.pi_eps(&Elem::monomial(pres, k[1].clone()))?)?;
            second = &second + &a.mul(&b)?.scale(c);
        }
        let v = &first + &second;
        t.record(v.is_zero(), || format!("h = {h}: {v}"));
    }
    Ok(t.finish())
}
