//! Graded gauge transformations `f•: Ω•(H) → Ω•(A)` up to degree 2, their
//! convolution inverses, and the graded vertical automorphisms `θ•(f•)`.

use std::sync::Arc;

use crate::check::{CheckOutcome, Tally};
use crate::error::{Error, Result};
use crate::hopf::{convolve, HopfStructure};
use crate::ncalg::{BasisRuleMap, Elem, ExtensionMode, MonomialWindow, Presentation, TensorElem};

use super::exact::ExactForms;
use super::group::{GaugeTransformation, VerticalAutomorphism};

/// Components `f⁰` (a gauge transformation), `f¹` and optionally `f²`.
#[derive(Clone, Debug)]
pub struct GradedGauge {
    pub base: GaugeTransformation,
    f1: BasisRuleMap,
    f2: Option<BasisRuleMap>,
}

/// `Ad•(ω) = (-1)^{|ω[1]||ω[2]|} ω[2]⊗S•(ω[1])∧ω[3]`.
pub fn graded_adjoint(hopf: &HopfStructure, w: &Elem) -> Result<TensorElem> {
    let p = hopf.pres();
    let mut out = TensorElem::zero(&[p.clone(), p.clone()]);
    for (k, c) in hopf.iterated_coproduct(w, 3)?.terms() {
        let odd = (p.form_degree(&k[0]) * p.form_degree(&k[1])) % 2 == 1;
        let s = hopf.antipode(&Elem::monomial(p, k[0].clone()))?;
        let right = s.mul(&Elem::monomial(p, k[2].clone()))?;
        let c = if odd { -c.clone() } else { c.clone() };
        out = &out + &TensorElem::pure(&[&Elem::monomial(p, k[1].clone()), &right]).scale(&c);
    }
    Ok(out)
}

fn form_map<F>(name: &str, domain: &Arc<Presentation>, target: &Arc<Presentation>, f: F) -> BasisRuleMap
where
    F: Fn(&Elem) -> Result<Elem> + Send + Sync + 'static,
{
    let d = domain.clone();
    BasisRuleMap::generated(name, domain, &[target.clone()], ExtensionMode::Linear, move |m| {
        Ok(Some(TensorElem::from_elem(&f(&Elem::monomial(&d, m.clone()))?)))
    })
}

impl GradedGauge {
    pub fn new(base: GaugeTransformation, f1: BasisRuleMap, f2: Option<BasisRuleMap>) -> Self {
        GradedGauge { base, f1, f2 }
    }

    /// `fⁿ(h₀dh₁∧…∧dhₙ) = f(h₀)df(h₁)∧…∧df(hₙ)` for `n = 1, 2`.
    pub fn dga_extension(base: &GaugeTransformation, exact: &ExactForms) -> Self {
        let a = base.total().clone();
        let h = base.hopf().pres().clone();
        let make = |name: String| {
            let (ex, b, a2) = (exact.clone(), base.clone(), a.clone());
            form_map(&name, &h, &a, move |w| ex.extend(w, &a2, |x| b.eval(x)))
        };
        let f1 = make(format!("{}^1", base.name));
        let f2 = make(format!("{}^2", base.name));
        GradedGauge { base: base.clone(), f1, f2: Some(f2) }
    }

    fn hopf(&self) -> &Arc<HopfStructure> {
        self.base.hopf()
    }

    fn total(&self) -> &Arc<Presentation> {
        self.base.total()
    }

    /// `f•(ω)`, degree by degree.
    pub fn apply(&self, w: &Elem) -> Result<Elem> {
        let mut out = Elem::zero(self.total());
        for n in degrees(w) {
            let part = w.degree_part(n);
            let img = match n {
                0 => self.base.eval(&part)?,
                1 => self.f1.apply_elem(&part)?,
                2 => match &self.f2 {
                    Some(f2) => f2.apply_elem(&part)?,
                    None => return Err(Error::Other(format!("{} has no degree-2 component", self.base.name))),
                },
                _ => return Err(Error::Other("graded gauges stop at degree 2".into())),
            };
            out = &out + &img;
        }
        Ok(out)
    }

    /// `g•(ω)`: `g⁰ = f⁻¹` and, for `n ≥ 1`,
    /// `gⁿ(ω) = -Σ_{j≥1} f⁻¹(ω₁) fʲ(ω₂) gⁿ⁻ʲ(ω₃)` over the `(0, j, n-j)` part of `Δ•²(ω)`.
    /// In degree 1 this is `g¹(ω) = -f⁻¹(ω₋₁)f¹(ω₀)f⁻¹(ω₁)`.
    pub fn inverse(&self, w: &Elem) -> Result<Elem> {
        let hopf = self.hopf();
        let p = hopf.pres();
        let mut out = Elem::zero(self.total());
        for n in degrees(w) {
            let part = w.degree_part(n);
            if n == 0 {
                out = &out + &self.base.eval_inverse(&part)?;
                continue;
            }
            if n > 2 {
                return Err(Error::Other("graded gauges stop at degree 2".into()));
            }
            for (k, c) in hopf.iterated_coproduct(&part, 3)?.terms() {
                let (d0, d1) = (p.form_degree(&k[0]), p.form_degree(&k[1]));
                if d0 != 0 || d1 == 0 {
                    continue;
                }
                let legs: Vec<Elem> = k.iter().map(|m| Elem::monomial(p, m.clone())).collect();
                let x = self.base.eval_inverse(&legs[0])?;
                let y = self.apply(&legs[1])?;
                let z = self.inverse(&legs[2])?;
                out = &out - &x.mul(&y)?.mul(&z)?.scale(c);
            }
        }
        Ok(out)
    }

    /// `f•*g• = g•*f• = ε•1` on window forms of degree 1 and 2.
    pub fn convolution_check(&self, window: &MonomialWindow) -> Result<Vec<CheckOutcome>> {
        let hopf = self.hopf();
        let h = hopf.pres();
        let mut out = Vec::new();
        for n in 1..=2u32 {
            let mut t = Tally::new(&format!("graded-convolution-inverse-degree-{n}"));
            for m in window.clone().with_forms(2).enumerate_degree(h, n)? {
                let w = Elem::monomial(h, m);
                let unit = Elem::scalar(self.total(), hopf.counit(&w)?);
                let fg = convolve(hopf, &|x| self.apply(x), &|x| self.inverse(x), &w)?;
                let gf = convolve(hopf, &|x| self.inverse(x), &|x| self.apply(x), &w)?;
                t.record(fg == unit && gf == unit, || format!("w = {w}: f*g = {fg}, g*f = {gf}"));
            }
            out.push(t.finish().windowed());
        }
        Ok(out)
    }

    /// `Δ_A•∘f• = (f•⊗id)∘Ad•` on window forms of degree at most 2.
    pub fn colinearity_check(&self, window: &MonomialWindow) -> Result<CheckOutcome> {
        let hopf = self.hopf();
        let h = hopf.pres();
        let comodule = self.base.galois().comodule();
        let mut t = Tally::new("graded-ad-colinear");
        for m in window.clone().with_forms(2).enumerate(h)? {
            let w = Elem::monomial(h, m);
            let lhs = comodule.coaction(&self.apply(&w)?)?;
            let ad = graded_adjoint(hopf, &w)?;
            let mut rhs = TensorElem::zero(&[self.total().clone(), h.clone()]);
            for (k, c) in ad.terms() {
                let x = self.apply(&Elem::monomial(h, k[0].clone()))?;
                rhs = &rhs + &TensorElem::pure(&[&x, &Elem::monomial(h, k[1].clone())]).scale(c);
            }
            t.record(lhs == rhs, || format!("w = {w}: {lhs} vs {rhs}"));
        }
        Ok(t.finish().windowed())
    }
}

/// `(f•*g•)(ω) = f•(ω₁)∧g•(ω₂)`.
pub fn graded_mul(f: &GradedGauge, g: &GradedGauge) -> GradedGauge {
    let base = super::group::gauge_mul(&f.base, &g.base);
    let hopf = f.hopf().clone();
    let (h, a) = (hopf.pres().clone(), f.total().clone());
    let make = |name: String| {
        let (x, y, hopf) = (f.clone(), g.clone(), hopf.clone());
        form_map(&name, &h, &a, move |w| convolve(&hopf, &|e| x.apply(e), &|e| y.apply(e), w))
    };
    let f1 = make(format!("{}^1", base.name));
    let f2 = (f.f2.is_some() && g.f2.is_some()).then(|| make(format!("{}^2", base.name)));
    GradedGauge { base, f1, f2 }
}

fn degrees(w: &Elem) -> std::collections::BTreeSet<u32> {
    w.terms().keys().map(|m| w.pres().form_degree(m)).collect()
}

/// `θ•(f•) = F•`, `F•(ω) = ω[0]f•(ω[1])`, with inverse `ω ↦ ω[0]g•(ω[1])`.
pub fn graded_vertical(f: &GradedGauge) -> VerticalAutomorphism {
    let galois = f.base.galois().clone();
    let a = galois.total().clone();
    let make = |inverse: bool, name: String| {
        let co = galois.comodule().coaction_map().clone();
        let g = f.clone();
        form_map(&name, &a, &a, move |x| {
            let t = co.apply(x)?;
            let mut out = Elem::zero(&t.factors()[0]);
            for (k, c) in t.terms() {
                let left = Elem::monomial(&t.factors()[0], k[0].clone());
                let h = Elem::monomial(&t.factors()[1], k[1].clone());
                let img = if inverse { g.inverse(&h)? } else { g.apply(&h)? };
                out = &out + &left.mul(&img)?.scale(c);
            }
            Ok(out)
        })
    };
    let name = format!("theta*({})", f.base.name);
    VerticalAutomorphism::new(&name, &galois, make(false, name.clone()), make(true, name.clone()))
}

/// `θ•⁻¹(F•)(ω) = ω⟨1⟩F•(ω⟨2⟩)` compared with `f•` on window forms of degree at most 1.
pub fn graded_round_trip_check(f: &GradedGauge, window: &MonomialWindow) -> Result<CheckOutcome> {
    let galois = f.base.galois();
    let big = graded_vertical(f);
    let h = galois.structure();
    let mut t = Tally::new("graded-theta-round-trip");
    for m in window.clone().with_forms(1).enumerate(h)? {
        let w = Elem::monomial(h, m);
        let tau = galois.translation(&w)?;
        let back = big.map().apply_at(&tau, 1)?.multiply_out()?;
        let want = f.apply(&w)?;
        t.record(back == want, || format!("w = {w}: {back} vs {want}"));
    }
    Ok(t.finish().windowed())
}
