//! Hopf algebras (with their graded extension on forms) given by letter rules.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::check::{CheckOutcome, Tally};
use crate::error::{Error, Result};
use crate::ncalg::{
    BasisRuleMap, Elem, ExtensionMode, Monomial, MonomialWindow, Presentation, Scalar, TensorElem,
};

/// A Hopf algebra `H` together with `Ω•(H)` in one presentation. Degree-0
/// monomials span `H`; the maps extend to forms as the graded `Δ•, ε•, S•`.
#[derive(Clone, Debug)]
pub struct HopfStructure {
    pres: Arc<Presentation>,
    coproduct: BasisRuleMap,
    counit: BasisRuleMap,
    antipode: BasisRuleMap,
}

/// Letter images defining a Hopf structure; inverse letters are filled in.
#[derive(Clone, Default)]
pub struct HopfRules {
    pub coproduct: BTreeMap<usize, TensorElem>,
    pub counit: BTreeMap<usize, Scalar>,
    pub antipode: BTreeMap<usize, Elem>,
}

impl HopfStructure {
    pub fn new(
        pres: &Arc<Presentation>,
        coproduct: BasisRuleMap,
        counit: BasisRuleMap,
        antipode: BasisRuleMap,
    ) -> Result<Self> {
        for m in [&coproduct, &counit, &antipode] {
            if !Arc::ptr_eq(m.domain(), pres) {
                return Err(Error::PresentationMismatch(m.domain().name().into(), pres.name().into()));
            }
        }
        Ok(HopfStructure { pres: pres.clone(), coproduct, counit, antipode })
    }

    pub fn from_rules(pres: &Arc<Presentation>, rules: HopfRules) -> Result<Self> {
        let mut cop = BTreeMap::new();
        let mut eps = BTreeMap::new();
        let mut s = BTreeMap::new();
        for (i, g) in pres.gens().iter().enumerate() {
            let name = &g.name;
            let missing = |what: &str| Error::Presentation(format!("no {what} rule for `{name}`"));
            let c = rules.coproduct.get(&i).ok_or_else(|| missing("coproduct"))?.clone();
            let e = rules.counit.get(&i).cloned().unwrap_or_else(|| {
                if g.form_degree > 0 {
                    Scalar::zero()
                } else {
                    Scalar::one()
                }
            });
            let a = rules.antipode.get(&i).ok_or_else(|| missing("antipode"))?.clone();
            if g.invertible {
                cop.insert(Monomial::single(i, -1), c.inverse()?);
                let ei = e.inverse().ok_or_else(|| Error::NotInvertible(format!("counit of {name}")))?;
                eps.insert(Monomial::single(i, -1), TensorElem::scalar(&[], ei));
                s.insert(Monomial::single(i, -1), TensorElem::from_elem(&a.inverse()?));
            }
            cop.insert(Monomial::single(i, 1), c);
            eps.insert(Monomial::single(i, 1), TensorElem::scalar(&[], e));
            s.insert(Monomial::single(i, 1), TensorElem::from_elem(&a));
        }
        let two = [pres.clone(), pres.clone()];
        HopfStructure::new(
            pres,
            BasisRuleMap::table("coproduct", pres, &two, ExtensionMode::AlgebraMorphism, cop),
            BasisRuleMap::table("counit", pres, &[], ExtensionMode::AlgebraMorphism, eps),
            BasisRuleMap::table("antipode", pres, &[pres.clone()], ExtensionMode::AntiAlgebraMorphism, s),
        )
    }

    pub fn pres(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn coproduct_map(&self) -> &BasisRuleMap {
        &self.coproduct
    }

    pub fn counit_map(&self) -> &BasisRuleMap {
        &self.counit
    }

    pub fn antipode_map(&self) -> &BasisRuleMap {
        &self.antipode
    }

    pub fn coproduct(&self, h: &Elem) -> Result<TensorElem> {
        self.coproduct.apply(h)
    }

    /// `n`-fold Sweedler expansion `h₁⊗…⊗hₙ`.
    pub fn iterated_coproduct(&self, h: &Elem, n: usize) -> Result<TensorElem> {
        let mut t = TensorElem::from_elem(h);
        for _ in 1..n {
            t = self.coproduct.apply_at(&t, 0)?;
        }
        Ok(t)
    }

    pub fn counit(&self, h: &Elem) -> Result<Scalar> {
        self.counit.apply(h)?.to_scalar()
    }

    pub fn antipode(&self, h: &Elem) -> Result<Elem> {
        self.antipode.apply_elem(h)
    }

    /// `π_ε(h) = h - ε(h)1`.
    pub fn pi_eps(&self, h: &Elem) -> Result<Elem> {
        Ok(h - &Elem::scalar(&self.pres, self.counit(h)?))
    }

    pub fn grouplike(&self, gen: &str, n: i32) -> Result<Elem> {
        Elem::gen_pow(&self.pres, gen, n)
    }

    /// Coassociativity, counit and antipode laws and multiplicativity of `Δ`
    /// on the window (forms included when the window allows them).
    pub fn axiom_check(&self, window: &MonomialWindow) -> Result<Vec<CheckOutcome>> {
        let basis = window.enumerate(&self.pres)?;
        let mut coassoc = Tally::new("coassociativity");
        let mut counit = Tally::new("counit");
        let mut antipode = Tally::new("antipode");
        let mut mult = Tally::new("coproduct-multiplicative");
        for m in &basis {
            let h = Elem::monomial(&self.pres, m.clone());
            let show = || self.pres.render_monomial(m);
            let d = self.coproduct(&h)?;
            let left = self.coproduct.apply_at(&d, 0)?;
            let right = self.coproduct.apply_at(&d, 1)?;
            coassoc.record(left == right, || format!("h = {}: {} vs {}", show(), left, right));
            let l = self.counit.apply_at(&d, 0)?.to_elem()?;
            let r = self.counit.apply_at(&d, 1)?.to_elem()?;
            counit.record(l == h && r == h, || format!("h = {}: {} / {}", show(), l, r));
            let eps = Elem::scalar(&self.pres, self.counit(&h)?);
            let sl = self.antipode.apply_at(&d, 0)?.multiply_out()?;
            let sr = self.antipode.apply_at(&d, 1)?.multiply_out()?;
            antipode.record(sl == eps && sr == eps, || format!("h = {}: {} / {}", show(), sl, sr));
        }
        let small: Vec<&Monomial> = basis.iter().take(24).collect();
        for a in &small {
            for b in &small {
                let x = Elem::monomial(&self.pres, (*a).clone());
                let y = Elem::monomial(&self.pres, (*b).clone());
                let lhs = self.coproduct(&x.mul(&y)?)?;
                let rhs = self.coproduct(&x)?.mul(&self.coproduct(&y)?)?;
                mult.record(lhs == rhs, || format!("{} * {}", x, y));
            }
        }
        Ok(vec![coassoc.finish(), counit.finish(), antipode.finish(), mult.finish()])
    }
}
