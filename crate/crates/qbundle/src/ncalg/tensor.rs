//! Graded tensor products of presented algebras.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::elem::{d_monomial, render_coeff_term, Elem};
use super::presentation::{add_terms, Monomial, Presentation, Terms};
use super::scalar::Scalar;

pub type TensorKey = Vec<Monomial>;
pub type TensorTerms = BTreeMap<TensorKey, Scalar>;

pub(crate) fn add_tterm(terms: &mut TensorTerms, k: TensorKey, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&k) {
        Some(slot) => {
            *slot += c;
            if slot.is_zero() {
                terms.remove(&k);
            }
        }
        None => {
            terms.insert(k, c.clone());
        }
    }
}

/// `x_1 ⊗ … ⊗ x_n` with Koszul-signed multiplication. A zero-factor tensor is a scalar.
#[derive(Clone)]
pub struct TensorElem {
    factors: Vec<Arc<Presentation>>,
    terms: TensorTerms,
}

impl PartialEq for TensorElem {
    fn eq(&self, other: &Self) -> bool {
        self.factors.len() == other.factors.len()
            && self
                .factors
                .iter()
                .zip(&other.factors)
                .all(|(a, b)| Arc::ptr_eq(a, b) || a.name() == b.name())
            && self.terms == other.terms
    }
}

impl Eq for TensorElem {}

fn same_factors(a: &[Arc<Presentation>], b: &[Arc<Presentation>]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| Arc::ptr_eq(x, y))
}

impl TensorElem {
    pub fn zero(factors: &[Arc<Presentation>]) -> Self {
        TensorElem { factors: factors.to_vec(), terms: TensorTerms::new() }
    }

    pub fn scalar(factors: &[Arc<Presentation>], c: Scalar) -> Self {
        let mut terms = TensorTerms::new();
        add_tterm(&mut terms, vec![Monomial::one(); factors.len()], &c);
        TensorElem { factors: factors.to_vec(), terms }
    }

    pub fn one(factors: &[Arc<Presentation>]) -> Self {
        TensorElem::scalar(factors, Scalar::one())
    }

    pub fn from_terms(factors: &[Arc<Presentation>], terms: TensorTerms) -> Self {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        TensorElem { factors: factors.to_vec(), terms }
    }

    pub fn basis(factors: &[Arc<Presentation>], key: TensorKey) -> Self {
        let mut terms = TensorTerms::new();
        terms.insert(key, Scalar::one());
        TensorElem { factors: factors.to_vec(), terms }
    }

    /// `e_1 ⊗ … ⊗ e_n`.
    pub fn pure(elems: &[&Elem]) -> Self {
        let factors: Vec<_> = elems.iter().map(|e| e.pres().clone()).collect();
        let mut terms = TensorTerms::new();
        terms.insert(Vec::new(), Scalar::one());
        for e in elems {
            let mut next = TensorTerms::new();
            for (k, c) in &terms {
                for (m, x) in e.terms() {
                    let mut kk = k.clone();
                    kk.push(m.clone());
                    add_tterm(&mut next, kk, &(c * x));
                }
            }
            terms = next;
        }
        TensorElem { factors, terms }
    }

    pub fn from_elem(e: &Elem) -> Self {
        TensorElem::pure(&[e])
    }

    pub fn factors(&self) -> &[Arc<Presentation>] {
        &self.factors
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn terms(&self) -> &TensorTerms {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The single factor as an element; requires arity 1.
    pub fn to_elem(&self) -> Result<Elem> {
        if self.factors.len() != 1 {
            return Err(Error::FactorMismatch(format!("expected 1 factor, got {}", self.factors.len())));
        }
        let mut t = Terms::new();
        for (k, c) in &self.terms {
            t.insert(k[0].clone(), c.clone());
        }
        Ok(Elem::from_terms(&self.factors[0], t))
    }

    /// The scalar value of a zero-factor tensor.
    pub fn to_scalar(&self) -> Result<Scalar> {
        if !self.factors.is_empty() {
            return Err(Error::FactorMismatch("expected a scalar".into()));
        }
        Ok(self.terms.get(&Vec::new()).cloned().unwrap_or_default())
    }

    fn check(&self, other: &TensorElem) -> Result<()> {
        if same_factors(&self.factors, &other.factors) {
            Ok(())
        } else {
            Err(Error::FactorMismatch(format!(
                "[{}] vs [{}]",
                self.factor_names().join(","),
                other.factor_names().join(",")
            )))
        }
    }

    fn factor_names(&self) -> Vec<String> {
        self.factors.iter().map(|p| p.name().to_string()).collect()
    }

    pub fn degrees(&self, key: &TensorKey) -> Vec<u32> {
        key.iter().zip(&self.factors).map(|(m, p)| p.form_degree(m)).collect()
    }

    pub fn try_add(&self, other: &TensorElem) -> Result<TensorElem> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            add_tterm(&mut terms, k.clone(), c);
        }
        Ok(TensorElem { factors: self.factors.clone(), terms })
    }

    pub fn scale(&self, c: &Scalar) -> TensorElem {
        if c.is_zero() {
            return TensorElem::zero(&self.factors);
        }
        TensorElem {
            factors: self.factors.clone(),
            terms: self.terms.iter().map(|(k, x)| (k.clone(), x * c)).collect(),
        }
    }

    /// Koszul-signed product: `(x ⊗ y)(x' ⊗ y') = (-1)^{|y||x'|} xx' ⊗ yy'`.
    pub fn mul(&self, other: &TensorElem) -> Result<TensorElem> {
        self.check(other)?;
        let n = self.factors.len();
        let mut terms = TensorTerms::new();
        for (ka, ca) in &self.terms {
            let da = self.degrees(ka);
            for (kb, cb) in &other.terms {
                let db = other.degrees(kb);
                let mut odd = 0u32;
                for j in 0..n {
                    let later: u32 = da[j + 1..].iter().sum();
                    odd += db[j] * later;
                }
                let sign = if odd % 2 == 1 { -Scalar::one() } else { Scalar::one() };
                let mut partial: Vec<(TensorKey, Scalar)> = vec![(Vec::new(), &sign * &(ca * cb))];
                for j in 0..n {
                    let prod = self.factors[j].mul_monomials(&ka[j], &kb[j])?;
                    let mut next = Vec::with_capacity(partial.len() * prod.len());
                    for (k, c) in &partial {
                        for (m, x) in &prod {
                            let mut kk = k.clone();
                            kk.push(m.clone());
                            next.push((kk, c * x));
                        }
                    }
                    partial = next;
                    if partial.is_empty() {
                        break;
                    }
                }
                for (k, c) in partial {
                    add_tterm(&mut terms, k, &c);
                }
            }
        }
        Ok(TensorElem { factors: self.factors.clone(), terms })
    }

    /// Replaces factor `i` by the image of an even map given on monomials.
    pub fn apply_factor<F>(&self, i: usize, f: F) -> Result<TensorElem>
    where
        F: Fn(&Monomial) -> Result<TensorElem>,
    {
        let mut out: Option<TensorElem> = None;
        let mut cache: BTreeMap<Monomial, TensorElem> = BTreeMap::new();
        for (k, c) in &self.terms {
            if !cache.contains_key(&k[i]) {
                cache.insert(k[i].clone(), f(&k[i])?);
            }
            let img = &cache[&k[i]];
            let factors: Vec<_> = self.factors[..i]
                .iter()
                .chain(img.factors.iter())
                .chain(self.factors[i + 1..].iter())
                .cloned()
                .collect();
            let acc = out.get_or_insert_with(|| TensorElem::zero(&factors));
            if !same_factors(&acc.factors, &factors) {
                return Err(Error::FactorMismatch("map images disagree on codomain".into()));
            }
            for (ik, ic) in &img.terms {
                let key: TensorKey = k[..i]
                    .iter()
                    .chain(ik.iter())
                    .chain(k[i + 1..].iter())
                    .cloned()
                    .collect();
                add_tterm(&mut acc.terms, key, &(c * ic));
            }
        }
        match out {
            Some(t) => Ok(t),
            None => {
                // Empty input: probe the codomain with the unit monomial.
                let img = f(&Monomial::one())?;
                let factors: Vec<_> = self.factors[..i]
                    .iter()
                    .chain(img.factors.iter())
                    .chain(self.factors[i + 1..].iter())
                    .cloned()
                    .collect();
                Ok(TensorElem::zero(&factors))
            }
        }
    }

    /// Multiplies factors `i` and `i+1` together.
    pub fn contract(&self, i: usize) -> Result<TensorElem> {
        if i + 1 >= self.factors.len() || !Arc::ptr_eq(&self.factors[i], &self.factors[i + 1]) {
            return Err(Error::FactorMismatch(format!("cannot contract factors {i},{}", i + 1)));
        }
        let p = &self.factors[i];
        let mut factors = self.factors.clone();
        factors.remove(i + 1);
        let mut terms = TensorTerms::new();
        for (k, c) in &self.terms {
            let prod = p.mul_monomials(&k[i], &k[i + 1])?;
            for (m, x) in &prod {
                let mut kk = k.clone();
                kk.remove(i + 1);
                kk[i] = m.clone();
                add_tterm(&mut terms, kk, &(c * x));
            }
        }
        Ok(TensorElem { factors, terms })
    }

    /// Multiplies all factors (which must share one presentation) in order.
    pub fn multiply_out(&self) -> Result<Elem> {
        let mut t = self.clone();
        while t.arity() > 1 {
            t = t.contract(0)?;
        }
        t.to_elem()
    }

    /// `d⊗ = Σ ±id⊗…⊗d⊗…⊗id` with Koszul signs.
    pub fn differential(&self) -> Result<TensorElem> {
        let mut terms = TensorTerms::new();
        for (k, c) in &self.terms {
            let degs = self.degrees(k);
            let mut before = 0u32;
            for i in 0..k.len() {
                let dm = d_monomial(&self.factors[i], &k[i])?;
                let sign = if before % 2 == 1 { -c.clone() } else { c.clone() };
                for (m, x) in &dm {
                    let mut kk = k.clone();
                    kk[i] = m.clone();
                    add_tterm(&mut terms, kk, &(&sign * x));
                }
                before += degs[i];
            }
        }
        Ok(TensorElem { factors: self.factors.clone(), terms })
    }

    /// Keeps the terms whose per-factor form degrees satisfy `keep`.
    pub fn filter_degrees<F: Fn(&[u32]) -> bool>(&self, keep: F) -> TensorElem {
        let terms = self
            .terms
            .iter()
            .filter(|(k, _)| keep(&self.degrees(k)))
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        TensorElem { factors: self.factors.clone(), terms }
    }

    /// Total form degree if homogeneous.
    pub fn total_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|k| self.degrees(k).iter().sum::<u32>());
        let first = it.next().unwrap_or(0);
        it.all(|d| d == first).then_some(first)
    }

    /// Collects factor `i` into coefficients: `Σ x_i ⊗ (rest)` grouped by the other legs.
    pub fn split_factor(&self, i: usize) -> BTreeMap<TensorKey, Terms> {
        let mut out: BTreeMap<TensorKey, Terms> = BTreeMap::new();
        for (k, c) in &self.terms {
            let mut rest = k.clone();
            let m = rest.remove(i);
            let slot = out.entry(rest).or_default();
            let mut single = Terms::new();
            single.insert(m, c.clone());
            add_terms(slot, &single, &Scalar::one());
        }
        out
    }

    /// Inverse of a single term `c·m₁⊗…⊗mₙ` of invertible degree-0 monomials.
    pub fn inverse(&self) -> Result<TensorElem> {
        if self.terms.len() != 1 {
            return Err(Error::NotInvertible(self.render()));
        }
        let (k, c) = self.terms.iter().next().unwrap();
        let ci = c.inverse().ok_or_else(|| Error::NotInvertible(self.render()))?;
        let invs: Vec<Elem> = self
            .key_elems(k)
            .iter()
            .map(|e| e.inverse())
            .collect::<Result<_>>()?;
        let refs: Vec<&Elem> = invs.iter().collect();
        Ok(TensorElem::pure(&refs).scale(&ci))
    }

    /// `x ⊗ y` as one tensor with the factors of both.
    pub fn outer(&self, other: &TensorElem) -> TensorElem {
        let factors: Vec<_> = self.factors.iter().chain(other.factors.iter()).cloned().collect();
        let mut terms = TensorTerms::new();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let k: TensorKey = ka.iter().chain(kb.iter()).cloned().collect();
                add_tterm(&mut terms, k, &(ca * cb));
            }
        }
        TensorElem { factors, terms }
    }

    /// Swaps factors `i` and `i+1` with the Koszul sign.
    pub fn swap(&self, i: usize) -> TensorElem {
        let mut factors = self.factors.clone();
        factors.swap(i, i + 1);
        let mut terms = TensorTerms::new();
        for (k, c) in &self.terms {
            let d = self.degrees(k);
            let mut kk = k.clone();
            kk.swap(i, i + 1);
            let c = if (d[i] * d[i + 1]) % 2 == 1 { -c.clone() } else { c.clone() };
            add_tterm(&mut terms, kk, &c);
        }
        TensorElem { factors, terms }
    }

    /// Moves factor `from` to position `to` by adjacent Koszul swaps.
    pub fn move_factor(&self, from: usize, to: usize) -> TensorElem {
        let mut t = self.clone();
        if from < to {
            for i in from..to {
                t = t.swap(i);
            }
        } else {
            for i in (to..from).rev() {
                t = t.swap(i);
            }
        }
        t
    }

    /// Replaces factors `i, i+1` by the image of an even map of two monomials.
    pub fn apply_pair<F>(&self, i: usize, f: F) -> Result<TensorElem>
    where
        F: Fn(&Monomial, &Monomial) -> Result<TensorElem>,
    {
        let mut out: Option<TensorElem> = None;
        for (k, c) in &self.terms {
            let img = f(&k[i], &k[i + 1])?;
            let factors: Vec<_> = self.factors[..i]
                .iter()
                .chain(img.factors.iter())
                .chain(self.factors[i + 2..].iter())
                .cloned()
                .collect();
            let acc = out.get_or_insert_with(|| TensorElem::zero(&factors));
            if !same_factors(&acc.factors, &factors) {
                return Err(Error::FactorMismatch("map images disagree on codomain".into()));
            }
            for (ik, ic) in &img.terms {
                let key: TensorKey = k[..i]
                    .iter()
                    .chain(ik.iter())
                    .chain(k[i + 2..].iter())
                    .cloned()
                    .collect();
                add_tterm(&mut acc.terms, key, &(c * ic));
            }
        }
        Ok(out.unwrap_or_else(|| self.clone()))
    }

    /// Elements of each factor for a single-term tensor.
    pub fn key_elems(&self, key: &TensorKey) -> Vec<Elem> {
        key.iter().zip(&self.factors).map(|(m, p)| Elem::monomial(p, m.clone())).collect()
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        if self.factors.is_empty() {
            return self.terms.values().next().unwrap().to_string();
        }
        let param = self.factors[0].param().to_string();
        let single = self.terms.len() == 1;
        let mut out = String::new();
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let body: Vec<String> =
                k.iter().zip(&self.factors).map(|(m, p)| p.render_monomial(m)).collect();
            let body = body.join(" (x) ");
            let inner = if self.factors.len() == 1 || (single && c.is_one()) {
                body
            } else {
                format!("({body})")
            };
            let (neg, text) = render_coeff_term(c, &inner, false, &param);
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&text);
        }
        out
    }
}

impl fmt::Display for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor({})", self.render())
    }
}

impl std::ops::Add for &TensorElem {
    type Output = TensorElem;
    fn add(self, rhs: &TensorElem) -> TensorElem {
        self.try_add(rhs).expect("adding tensors over different factors")
    }
}

impl std::ops::Add for TensorElem {
    type Output = TensorElem;
    fn add(self, rhs: TensorElem) -> TensorElem {
        &self + &rhs
    }
}

impl std::ops::Neg for &TensorElem {
    type Output = TensorElem;
    fn neg(self) -> TensorElem {
        self.scale(&-Scalar::one())
    }
}

impl std::ops::Sub for &TensorElem {
    type Output = TensorElem;
    fn sub(self, rhs: &TensorElem) -> TensorElem {
        self + &(-rhs)
    }
}

impl std::ops::Sub for TensorElem {
    type Output = TensorElem;
    fn sub(self, rhs: TensorElem) -> TensorElem {
        &self - &rhs
    }
}
