//! Right comodule algebras `Δ_A: A → A⊗H`, extended to forms.

use std::sync::Arc;

use crate::check::{CheckOutcome, Tally};
use crate::error::{Error, Result};
use crate::ncalg::{BasisRuleMap, Elem, Monomial, MonomialWindow, Presentation, TensorElem};

use super::structure::HopfStructure;

#[derive(Clone, Debug)]
pub struct ComoduleAlgebra {
    total: Arc<Presentation>,
    hopf: Arc<HopfStructure>,
    coaction: BasisRuleMap,
}

impl ComoduleAlgebra {
    pub fn new(total: &Arc<Presentation>, hopf: &Arc<HopfStructure>, coaction: BasisRuleMap) -> Result<Self> {
        let cod = coaction.codomain();
        if !Arc::ptr_eq(coaction.domain(), total)
            || cod.len() != 2
            || !Arc::ptr_eq(&cod[0], total)
            || !Arc::ptr_eq(&cod[1], hopf.pres())
        {
            return Err(Error::FactorMismatch("coaction must map A into A⊗H".into()));
        }
        Ok(ComoduleAlgebra { total: total.clone(), hopf: hopf.clone(), coaction })
    }

    pub fn total(&self) -> &Arc<Presentation> {
        &self.total
    }

    pub fn hopf(&self) -> &Arc<HopfStructure> {
        &self.hopf
    }

    pub fn structure(&self) -> &Arc<Presentation> {
        self.hopf.pres()
    }

    pub fn coaction_map(&self) -> &BasisRuleMap {
        &self.coaction
    }

    /// `Δ_A•(a) = a₀⊗a₁`.
    pub fn coaction(&self, a: &Elem) -> Result<TensorElem> {
        self.coaction.apply(a)
    }

    /// `a₀⊗a₁⊗…⊗aₙ` with `n` legs in `H`.
    pub fn iterated_coaction(&self, a: &Elem, n: usize) -> Result<TensorElem> {
        let mut t = TensorElem::from_elem(a);
        if n == 0 {
            return Ok(t);
        }
        t = self.coaction.apply_at(&t, 0)?;
        for _ in 1..n {
            t = self.hopf.coproduct_map().apply_at(&t, t.arity() - 1)?;
        }
        Ok(t)
    }

    pub fn iterated_coaction_monomial(&self, m: &Monomial, n: usize) -> Result<TensorElem> {
        self.iterated_coaction(&Elem::monomial(&self.total, m.clone()), n)
    }

    /// Degree-0 weight-0 window monomials; a basis of the coinvariants in the
    /// window for a grading-diagonal coaction.
    pub fn coinvariant_basis(&self, window: &MonomialWindow) -> Result<Vec<Elem>> {
        Ok(window
            .enumerate_degree(&self.total, 0)?
            .into_iter()
            .filter(|m| self.total.weight(m) == 0)
            .map(|m| Elem::monomial(&self.total, m))
            .collect())
    }

    pub fn is_coinvariant(&self, a: &Elem) -> Result<bool> {
        let one = Elem::one(self.hopf.pres());
        Ok(self.coaction(a)? == TensorElem::pure(&[a, &one]))
    }

    /// Checks that each generator coacts diagonally, `g ↦ g⊗t^{|g|}` for a grouplike `t`.
    pub fn grading_diagonal(&self, grouplike: &str) -> Result<bool> {
        for (i, g) in self.total.gens().iter().enumerate() {
            if g.form_degree > 0 {
                continue;
            }
            let x = Elem::monomial(&self.total, Monomial::single(i, 1));
            let t = self.hopf.grouplike(grouplike, g.weight)?;
            if self.coaction(&x)? != TensorElem::pure(&[&x, &t]) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Coaction axioms and multiplicativity on the window.
    pub fn axiom_check(&self, window: &MonomialWindow) -> Result<Vec<CheckOutcome>> {
        let basis = window.enumerate(&self.total)?;
        let mut coassoc = Tally::new("coaction-coassociativity");
        let mut counit = Tally::new("coaction-counit");
        let mut mult = Tally::new("coaction-multiplicative");
        for m in &basis {
            let a = Elem::monomial(&self.total, m.clone());
            let d = self.coaction(&a)?;
            let left = self.coaction.apply_at(&d, 0)?;
            let right = self.hopf.coproduct_map().apply_at(&d, 1)?;
            coassoc.record(left == right, || format!("a = {a}: {left} vs {right}"));
            let c = self.hopf.counit_map().apply_at(&d, 1)?.to_elem()?;
            counit.record(c == a, || format!("a = {a}: {c}"));
        }
        let small: Vec<&Monomial> = basis.iter().take(30).collect();
        for x in &small {
            for y in &small {
                let a = Elem::monomial(&self.total, (*x).clone());
                let b = Elem::monomial(&self.total, (*y).clone());
                let lhs = self.coaction(&a.mul(&b)?)?;
                let rhs = self.coaction(&a)?.mul(&self.coaction(&b)?)?;
                mult.record(lhs == rhs, || format!("{a} * {b}: {lhs} vs {rhs}"));
            }
        }
        Ok(vec![coassoc.finish(), counit.finish(), mult.finish()])
    }
}
