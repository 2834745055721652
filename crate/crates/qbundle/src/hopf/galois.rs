//! Galois maps, translation maps, untwisting and the braiding of a Hopf–Galois extension.
//!
//! Balanced tensors over the coinvariants are represented by ordinary tensors
//! over `A`; two representatives are equal in `A⊗_B…⊗_B A` iff their untwists
//! agree.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::ncalg::{
    linsolve::solve_linear, BasisRuleMap, Elem, Monomial, MonomialWindow, Presentation, Scalar,
    TensorElem,
};

use super::comodule::ComoduleAlgebra;

#[derive(Clone)]
pub enum TranslationSource {
    /// A colinear algebra morphism `j•: Ω•(H) → Ω•(A)`; then `τ•(ω) = j•(S•(ω₁))⊗j•(ω₂)`.
    Cleaving(BasisRuleMap),
    /// Each `τ•(h)` is solved from `χ•(x) = 1⊗h` over a window sized by `h`.
    Solve,
}

pub struct GaloisExtension {
    comodule: ComoduleAlgebra,
    source: TranslationSource,
    cache: Mutex<HashMap<Monomial, TensorElem>>,
}

impl fmt::Debug for GaloisExtension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GaloisExtension({})", self.comodule.total().name())
    }
}

impl GaloisExtension {
    pub fn new(comodule: ComoduleAlgebra, source: TranslationSource) -> Self {
        GaloisExtension { comodule, source, cache: Mutex::new(HashMap::new()) }
    }

    pub fn comodule(&self) -> &ComoduleAlgebra {
        &self.comodule
    }

    pub fn total(&self) -> &Arc<Presentation> {
        self.comodule.total()
    }

    pub fn structure(&self) -> &Arc<Presentation> {
        self.comodule.structure()
    }

    pub fn source(&self) -> &TranslationSource {
        &self.source
    }

    pub fn cleaving(&self) -> Option<&BasisRuleMap> {
        match &self.source {
            TranslationSource::Cleaving(j) => Some(j),
            TranslationSource::Solve => None,
        }
    }

    fn aa(&self) -> [Arc<Presentation>; 2] {
        [self.total().clone(), self.total().clone()]
    }

    /// `χ•(a⊗a') = a∧a'₀⊗a'₁` on representatives.
    pub fn galois(&self, x: &TensorElem) -> Result<TensorElem> {
        if x.arity() != 2 {
            return Err(Error::FactorMismatch("galois map needs two factors".into()));
        }
        self.comodule.coaction_map().apply_at(x, 1)?.contract(0)
    }

    pub fn translation(&self, h: &Elem) -> Result<TensorElem> {
        let mut out = TensorElem::zero(&self.aa());
        for (m, c) in h.terms() {
            out = &out + &self.translation_monomial(m)?.scale(c);
        }
        Ok(out)
    }

    pub fn translation_monomial(&self, m: &Monomial) -> Result<TensorElem> {
        if let Some(t) = self.cache.lock().expect("cache").get(m) {
            return Ok(t.clone());
        }
        let t = match &self.source {
            TranslationSource::Cleaving(j) => self.cleft_translation(j, m)?,
            TranslationSource::Solve => self.solve_translation(m)?,
        };
        self.cache.lock().expect("cache").insert(m.clone(), t.clone());
        Ok(t)
    }

    fn cleft_translation(&self, j: &BasisRuleMap, m: &Monomial) -> Result<TensorElem> {
        let hopf = self.comodule.hopf();
        let h = Elem::monomial(hopf.pres(), m.clone());
        let d = hopf.coproduct(&h)?;
        let s = hopf.antipode_map().apply_at(&d, 0)?;
        let left = j.apply_at(&s, 0)?;
        j.apply_at(&left, 1)
    }

    /// Window oracle for `τ•(h)`: both legs are homogeneous of opposite weight;
    /// the letter budget starts at `|weight| + degree` and grows until a solution appears.
    pub fn solve_translation(&self, m: &Monomial) -> Result<TensorElem> {
        let hp = self.structure();
        let w = hp.weight(m).unsigned_abs();
        let deg = hp.form_degree(m);
        let mut last = None;
        for letters in w + deg..=w + 3 * deg + 2 {
            let win = MonomialWindow::new(letters.max(1)).with_forms(deg).with_letters(letters);
            match self.solve_translation_on(m, &win) {
                Ok(x) => return Ok(x),
                Err(Error::NoSolution(why)) => last = Some(why),
                Err(e) => return Err(e),
            }
        }
        Err(Error::NoSolution(last.unwrap_or_default()))
    }

    pub fn solve_translation_on(&self, m: &Monomial, win: &MonomialWindow) -> Result<TensorElem> {
        let hp = self.structure();
        let a = self.total();
        let w = hp.weight(m);
        let deg = hp.form_degree(m);
        let left = win.enumerate_weight(a, -w)?;
        let right = win.enumerate_weight(a, w)?;
        let mut basis = Vec::new();
        for l in &left {
            for r in &right {
                if a.form_degree(l) + a.form_degree(r) == deg {
                    basis.push(TensorElem::basis(&self.aa(), vec![l.clone(), r.clone()]));
                }
            }
        }
        let target = TensorElem::pure(&[&Elem::one(a), &Elem::monomial(hp, m.clone())]);
        let (x, _free) = solve_linear(&basis, |b| self.galois(b), &target).map_err(|e| match e {
            Error::NoSolution(why) => {
                Error::NoSolution(format!("translation of {}: {why}", hp.render_monomial(m)))
            }
            other => other,
        })?;
        Ok(x)
    }

    /// Representative-level untwist `A^{⊗(n+1)} → A⊗H^{⊗n}`:
    /// `a⁰⊗…⊗aⁿ ↦ Π_i (a^i₀ ⊗ a^i₁ ⊗ … ⊗ a^i_i ⊗ 1 ⊗ … ⊗ 1)`.
    pub fn untwist(&self, x: &TensorElem) -> Result<TensorElem> {
        if x.arity() < 2 {
            return Err(Error::FactorMismatch("untwist needs at least two factors".into()));
        }
        self.untwist_prefix(x, x.arity() - 1)
    }

    /// Untwists the first `n+1` factors (all in `A`) and keeps the rest.
    pub fn untwist_prefix(&self, x: &TensorElem, n: usize) -> Result<TensorElem> {
        let a = self.total();
        let h = self.structure();
        for p in &x.factors()[..=n] {
            if !Arc::ptr_eq(p, a) {
                return Err(Error::FactorMismatch("untwist prefix must lie in A".into()));
            }
        }
        let mut head: Vec<Arc<Presentation>> = vec![a.clone()];
        head.extend(std::iter::repeat_n(h.clone(), n));
        let rest: Vec<Arc<Presentation>> = x.factors()[n + 1..].to_vec();
        let mut all = head.clone();
        all.extend(rest.iter().cloned());
        let mut out = TensorElem::zero(&all);
        let mut legs: HashMap<(Monomial, usize), TensorElem> = HashMap::new();
        for (key, c) in x.terms() {
            let mut acc = TensorElem::one(&head);
            for (i, m) in key[..=n].iter().enumerate() {
                if !legs.contains_key(&(m.clone(), i)) {
                    let it = self.comodule.iterated_coaction_monomial(m, i)?;
                    let pad = vec![h.clone(); n - i];
                    legs.insert((m.clone(), i), it.outer(&TensorElem::one(&pad)));
                }
                acc = acc.mul(&legs[&(m.clone(), i)])?;
                if acc.is_zero() {
                    break;
                }
            }
            let tail = TensorElem::basis(&rest, key[n + 1..].to_vec());
            out = &out + &acc.outer(&tail).scale(c);
        }
        Ok(out)
    }

    /// Equality in `A⊗_B…⊗_B A` (and `…⊗H` tails) via untwisting.
    pub fn balanced_eq(&self, x: &TensorElem, y: &TensorElem, prefix: usize) -> Result<bool> {
        Ok(self.untwist_prefix(x, prefix)? == self.untwist_prefix(y, prefix)?)
    }

    /// `σ•(ω⊗η) = (-1)^{|η||ω₁|} ω₀∧η∧τ•(ω₁)` on monomials.
    pub fn braid_monomials(&self, w: &Monomial, e: &Monomial) -> Result<TensorElem> {
        let a = self.total();
        let hp = self.structure();
        let d = self.comodule.coaction(&Elem::monomial(a, w.clone()))?;
        let eta = Elem::monomial(a, e.clone());
        let deg_eta = a.form_degree(e);
        let mut out = TensorElem::zero(&self.aa());
        for (k, c) in d.terms() {
            let sign = if (deg_eta * hp.form_degree(&k[1])) % 2 == 1 { -c.clone() } else { c.clone() };
            let left = Elem::monomial(a, k[0].clone()).mul(&eta)?;
            let tau = self.translation_monomial(&k[1])?;
            let lt = TensorElem::pure(&[&left, &Elem::one(a)]);
            out = &out + &lt.mul(&tau)?.scale(&sign);
        }
        Ok(out)
    }

    pub fn braiding(&self, x: &TensorElem) -> Result<TensorElem> {
        self.braiding_at(x, 0)
    }

    /// `σ` acting on factors `i, i+1`.
    pub fn braiding_at(&self, x: &TensorElem, i: usize) -> Result<TensorElem> {
        x.apply_pair(i, |w, e| self.braid_monomials(w, e))
    }

    /// Clears cached translation values.
    pub fn clear_cache(&self) {
        self.cache.lock().expect("cache").clear();
    }

    /// Translation values computed so far.
    pub fn cached(&self) -> BTreeMap<Monomial, TensorElem> {
        self.cache.lock().expect("cache").iter().map(|(k, v)| (k.clone(), v.clone())).collect()
    }
}

/// `b ⊗ 1` times a tensor in `A⊗A` (left multiplication on the first leg).
pub fn left_mul(b: &Elem, x: &TensorElem) -> Result<TensorElem> {
    let f = x.factors().to_vec();
    let mut parts = vec![b.clone()];
    parts.extend(f[1..].iter().map(Elem::one));
    let refs: Vec<&Elem> = parts.iter().collect();
    TensorElem::pure(&refs).mul(x)
}

/// A tensor times `1 ⊗ … ⊗ b` (right multiplication on the last leg).
pub fn right_mul(x: &TensorElem, b: &Elem) -> Result<TensorElem> {
    let f = x.factors().to_vec();
    let mut parts: Vec<Elem> = f[..f.len() - 1].iter().map(Elem::one).collect();
    parts.push(b.clone());
    let refs: Vec<&Elem> = parts.iter().collect();
    x.mul(&TensorElem::pure(&refs))
}

/// Scalar multiple helper used by callers building linear combinations.
pub fn combine(terms: &[(Scalar, TensorElem)], factors: &[Arc<Presentation>]) -> TensorElem {
    let mut out = TensorElem::zero(factors);
    for (c, t) in terms {
        out = &out + &t.scale(c);
    }
    out
}
