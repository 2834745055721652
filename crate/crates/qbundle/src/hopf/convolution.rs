//! Convolution of linear maps `H → A`.

use std::sync::Arc;

use crate::error::Result;
use crate::ncalg::{Elem, Presentation};

use super::structure::HopfStructure;

pub type LinearFn<'a> = dyn Fn(&Elem) -> Result<Elem> + 'a;

/// `(f * g)(h) = f(h₁) g(h₂)`.
pub fn convolve(hopf: &HopfStructure, f: &LinearFn<'_>, g: &LinearFn<'_>, h: &Elem) -> Result<Elem> {
    let d = hopf.coproduct(h)?;
    let mut out: Option<Elem> = None;
    for (k, c) in d.terms() {
        let x = f(&Elem::monomial(hopf.pres(), k[0].clone()))?;
        let y = g(&Elem::monomial(hopf.pres(), k[1].clone()))?;
        let term = x.mul(&y)?.scale(c);
        out = Some(match out {
            None => term,
            Some(acc) => &acc + &term,
        });
    }
    match out {
        Some(e) => Ok(e),
        None => Ok(Elem::zero(f(&Elem::one(hopf.pres()))?.pres())),
    }
}

/// The convolution unit `h ↦ ε(h)1`.
pub fn convolution_unit(hopf: &HopfStructure, target: &Arc<Presentation>, h: &Elem) -> Result<Elem> {
    Ok(Elem::scalar(target, hopf.counit(h)?))
}

/// Checks `f * g = g * f = ε1` on the given elements.
pub fn are_convolution_inverse(
    hopf: &HopfStructure,
    target: &Arc<Presentation>,
    f: &LinearFn<'_>,
    g: &LinearFn<'_>,
    hs: &[Elem],
) -> Result<bool> {
    for h in hs {
        let e = convolution_unit(hopf, target, h)?;
        if convolve(hopf, f, g, h)? != e || convolve(hopf, g, f, h)? != e {
            return Ok(false);
        }
    }
    Ok(true)
}
