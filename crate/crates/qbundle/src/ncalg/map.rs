//! Linear maps given by images of basis elements.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::elem::Elem;
use super::presentation::{Monomial, Presentation};
use super::scalar::Scalar;
use super::tensor::TensorElem;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtensionMode {
    /// Rules on letters `g`, `g^-1`; extended multiplicatively (graded, Koszul signs).
    AlgebraMorphism,
    /// Rules on letters; `f(xy) = (-1)^{|x||y|} f(y) f(x)`.
    AntiAlgebraMorphism,
    /// Rules on pure form words; `f(a·ω) = (a ⊗ 1 …)·f(ω)` for algebra coefficients `a`.
    LeftModule,
    /// Rules on whole normal monomials.
    Linear,
}

pub type RuleFn = Arc<dyn Fn(&Monomial) -> Result<Option<TensorElem>> + Send + Sync>;

#[derive(Clone)]
pub enum RuleSource {
    Table(BTreeMap<Monomial, TensorElem>),
    Generated(RuleFn),
}

#[derive(Clone)]
pub struct BasisRuleMap {
    name: String,
    domain: Arc<Presentation>,
    codomain: Vec<Arc<Presentation>>,
    mode: ExtensionMode,
    source: RuleSource,
}

impl fmt::Debug for BasisRuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BasisRuleMap({}, {:?})", self.name, self.mode)
    }
}

impl BasisRuleMap {
    pub fn table(
        name: &str,
        domain: &Arc<Presentation>,
        codomain: &[Arc<Presentation>],
        mode: ExtensionMode,
        rules: BTreeMap<Monomial, TensorElem>,
    ) -> Self {
        BasisRuleMap {
            name: name.into(),
            domain: domain.clone(),
            codomain: codomain.to_vec(),
            mode,
            source: RuleSource::Table(rules),
        }
    }

    pub fn generated<F>(
        name: &str,
        domain: &Arc<Presentation>,
        codomain: &[Arc<Presentation>],
        mode: ExtensionMode,
        f: F,
    ) -> Self
    where
        F: Fn(&Monomial) -> Result<Option<TensorElem>> + Send + Sync + 'static,
    {
        BasisRuleMap {
            name: name.into(),
            domain: domain.clone(),
            codomain: codomain.to_vec(),
            mode,
            source: RuleSource::Generated(Arc::new(f)),
        }
    }

    /// The identity of a presentation, as a plain linear map.
    pub fn identity(pres: &Arc<Presentation>) -> Self {
        let p = pres.clone();
        BasisRuleMap::generated("id", pres, &[pres.clone()], ExtensionMode::Linear, move |m| {
            Ok(Some(TensorElem::from_elem(&Elem::monomial(&p, m.clone()))))
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> &Arc<Presentation> {
        &self.domain
    }

    pub fn codomain(&self) -> &[Arc<Presentation>] {
        &self.codomain
    }

    pub fn mode(&self) -> ExtensionMode {
        self.mode
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.into();
        self
    }

    fn lookup(&self, m: &Monomial) -> Result<Option<TensorElem>> {
        match &self.source {
            RuleSource::Table(t) => Ok(t.get(m).cloned()),
            RuleSource::Generated(f) => f(m),
        }
    }

    fn require(&self, m: &Monomial) -> Result<TensorElem> {
        self.lookup(m)?.ok_or_else(|| Error::OutsideRuleClosure {
            map: self.name.clone(),
            item: self.domain.render_monomial(m),
        })
    }

    pub fn apply_monomial(&self, m: &Monomial) -> Result<TensorElem> {
        match self.mode {
            ExtensionMode::Linear => self.require(m),
            ExtensionMode::AlgebraMorphism => {
                let mut acc = TensorElem::one(&self.codomain);
                let mut cache: BTreeMap<(usize, i32), TensorElem> = BTreeMap::new();
                for (g, s) in m.letters() {
                    if !cache.contains_key(&(g, s)) {
                        cache.insert((g, s), self.require(&Monomial::single(g, s))?);
                    }
                    acc = acc.mul(&cache[&(g, s)])?;
                }
                Ok(acc)
            }
            ExtensionMode::AntiAlgebraMorphism => {
                let letters = m.letters();
                let degs: Vec<u32> =
                    letters.iter().map(|&(g, _)| self.domain.gen(g).form_degree).collect();
                let mut odd = 0u32;
                for i in 0..degs.len() {
                    for j in i + 1..degs.len() {
                        odd += degs[i] * degs[j];
                    }
                }
                let mut acc = TensorElem::one(&self.codomain);
                for &(g, s) in letters.iter().rev() {
                    acc = acc.mul(&self.require(&Monomial::single(g, s))?)?;
                }
                Ok(if odd % 2 == 1 { acc.scale(&-Scalar::one()) } else { acc })
            }
            ExtensionMode::LeftModule => {
                let (alg, form): (Vec<_>, Vec<_>) = m
                    .blocks()
                    .iter()
                    .partition(|&&(g, _)| self.domain.gen(g).form_degree == 0);
                let form_img = self.require(&Monomial::from_blocks(form))?;
                if alg.is_empty() {
                    return Ok(form_img);
                }
                if !Arc::ptr_eq(&self.codomain[0], &self.domain) {
                    return Err(Error::FactorMismatch(format!(
                        "left-module map `{}` needs its domain as first codomain factor",
                        self.name
                    )));
                }
                let a = Elem::monomial(&self.domain, Monomial::from_blocks(alg));
                let ones: Vec<Elem> = self.codomain[1..].iter().map(Elem::one).collect();
                let mut parts: Vec<&Elem> = vec![&a];
                parts.extend(ones.iter());
                TensorElem::pure(&parts).mul(&form_img)
            }
        }
    }

    pub fn apply(&self, x: &Elem) -> Result<TensorElem> {
        if !Arc::ptr_eq(x.pres(), &self.domain) {
            return Err(Error::PresentationMismatch(
                x.pres().name().into(),
                self.domain.name().into(),
            ));
        }
        let mut out = TensorElem::zero(&self.codomain);
        for (m, c) in x.terms() {
            out = &out + &self.apply_monomial(m)?.scale(c);
        }
        Ok(out)
    }

    /// Apply and unwrap a single-factor result.
    pub fn apply_elem(&self, x: &Elem) -> Result<Elem> {
        self.apply(x)?.to_elem()
    }

    /// Apply to factor `i` of a tensor.
    pub fn apply_at(&self, t: &TensorElem, i: usize) -> Result<TensorElem> {
        if !Arc::ptr_eq(&t.factors()[i], &self.domain) {
            return Err(Error::PresentationMismatch(
                t.factors()[i].name().into(),
                self.domain.name().into(),
            ));
        }
        t.apply_factor(i, |m| self.apply_monomial(m))
    }
}
