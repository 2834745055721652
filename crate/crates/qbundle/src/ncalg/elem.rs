//! Elements of a presented graded algebra.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::presentation::{add_term, add_terms, Block, Monomial, Presentation, Terms};
use super::scalar::Scalar;

/// A finite combination of normal monomials. Covers both algebra elements and
/// differential forms, which live in the same presentation.
#[derive(Clone)]
pub struct Elem {
    pres: Arc<Presentation>,
    terms: Terms,
}

pub type AlgElem = Elem;
pub type FormElem = Elem;

impl PartialEq for Elem {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.pres, &other.pres) || self.pres.name() == other.pres.name())
            && self.terms == other.terms
    }
}

impl Eq for Elem {}

impl Elem {
    pub fn zero(pres: &Arc<Presentation>) -> Self {
        Elem { pres: pres.clone(), terms: Terms::new() }
    }

    pub fn one(pres: &Arc<Presentation>) -> Self {
        Elem::scalar(pres, Scalar::one())
    }

    pub fn scalar(pres: &Arc<Presentation>, c: Scalar) -> Self {
        let mut terms = Terms::new();
        add_term(&mut terms, Monomial::one(), &c);
        Elem { pres: pres.clone(), terms }
    }

    pub fn from_terms(pres: &Arc<Presentation>, terms: Terms) -> Self {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Elem { pres: pres.clone(), terms }
    }

    /// A normal monomial with coefficient 1 (not re-normalized).
    pub fn monomial(pres: &Arc<Presentation>, m: Monomial) -> Self {
        let mut terms = Terms::new();
        terms.insert(m, Scalar::one());
        Elem { pres: pres.clone(), terms }
    }

    /// Normal form of an arbitrary word of generator powers.
    pub fn word(pres: &Arc<Presentation>, word: &[Block]) -> Result<Self> {
        Ok(Elem { pres: pres.clone(), terms: pres.normalize_word(word)? })
    }

    pub fn gen(pres: &Arc<Presentation>, name: &str) -> Result<Self> {
        let g = pres.index_of(name).ok_or_else(|| Error::UnknownSymbol(name.into()))?;
        Elem::word(pres, &[(g, 1)])
    }

    pub fn gen_pow(pres: &Arc<Presentation>, name: &str, e: i32) -> Result<Self> {
        let g = pres.index_of(name).ok_or_else(|| Error::UnknownSymbol(name.into()))?;
        Elem::word(pres, &[(g, e)])
    }

    pub fn pres(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    pub fn into_terms(self) -> Terms {
        self.terms
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

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    fn check(&self, other: &Elem) -> Result<()> {
        if Arc::ptr_eq(&self.pres, &other.pres) {
            Ok(())
        } else {
            Err(Error::PresentationMismatch(self.pres.name().into(), other.pres.name().into()))
        }
    }

    pub fn try_add(&self, other: &Elem) -> Result<Elem> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        add_terms(&mut terms, &other.terms, &Scalar::one());
        Ok(Elem { pres: self.pres.clone(), terms })
    }

    pub fn scale(&self, c: &Scalar) -> Elem {
        if c.is_zero() {
            return Elem::zero(&self.pres);
        }
        Elem {
            pres: self.pres.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Elem) -> Result<Elem> {
        self.check(other)?;
        let mut terms = Terms::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let t = self.pres.mul_monomials(a, b)?;
                add_terms(&mut terms, &t, &(x * y));
            }
        }
        Ok(Elem { pres: self.pres.clone(), terms })
    }

    /// The wedge product; identical to `mul` since forms share the presentation.
    pub fn wedge(&self, other: &Elem) -> Result<Elem> {
        self.mul(other)
    }

    pub fn pow(&self, n: i64) -> Result<Elem> {
        if n < 0 {
            return self.inverse()?.pow(-n);
        }
        let mut acc = Elem::one(&self.pres);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Inverse of `c·m` with `c` a unit scalar and `m` built from invertible generators.
    pub fn inverse(&self) -> Result<Elem> {
        let err = || Error::NotInvertible(self.to_string());
        if self.terms.len() != 1 {
            return Err(err());
        }
        let (m, c) = self.terms.iter().next().unwrap();
        let ci = c.inverse().ok_or_else(err)?;
        if m.blocks().iter().any(|&(g, _)| !self.pres.gen(g).invertible) {
            return Err(err());
        }
        let word: Vec<Block> = m.blocks().iter().rev().map(|&(g, e)| (g, -e)).collect();
        Ok(Elem::word(&self.pres, &word)?.scale(&ci))
    }

    /// Component of form degree `k`.
    pub fn degree_part(&self, k: u32) -> Elem {
        Elem {
            pres: self.pres.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.pres.form_degree(m) == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// The common form degree, if homogeneous (zero counts as degree 0).
    pub fn form_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| self.pres.form_degree(m));
        let first = it.next().unwrap_or(0);
        it.all(|d| d == first).then_some(first)
    }

    /// The common coaction weight, if homogeneous.
    pub fn weight(&self) -> Option<i32> {
        let mut it = self.terms.keys().map(|m| self.pres.weight(m));
        let first = it.next().unwrap_or(0);
        it.all(|d| d == first).then_some(first)
    }

    /// The graded Leibniz extension of `d` from generators, with `d(x^-1) = -x^-1 dx x^-1`.
    pub fn d(&self) -> Result<Elem> {
        let mut terms = Terms::new();
        for (m, c) in &self.terms {
            let dm = d_monomial(&self.pres, m)?;
            add_terms(&mut terms, &dm, c);
        }
        Ok(Elem { pres: self.pres.clone(), terms })
    }

    pub fn render(&self) -> String {
        render_terms(&self.pres, &self.terms)
    }
}

fn letter_differential(pres: &Arc<Presentation>, g: usize, sign: i32) -> Result<Terms> {
    let dg = pres
        .differential_of(g)
        .ok_or_else(|| Error::Presentation(format!("no differential for `{}`", pres.gen(g).name)))?;
    if sign > 0 {
        return Ok(dg.clone());
    }
    let inv = Monomial::single(g, -1);
    let mut out = Terms::new();
    for (m, c) in dg {
        let left = pres.mul_monomials(&inv, m)?;
        for (lm, lc) in &left {
            let t = pres.mul_monomials(lm, &inv)?;
            add_terms(&mut out, &t, &-(lc * c));
        }
    }
    Ok(out)
}

pub(crate) fn d_monomial(pres: &Arc<Presentation>, m: &Monomial) -> Result<Terms> {
    let letters = m.letters();
    let mut out = Terms::new();
    let mut prefix = Monomial::one();
    let mut prefix_deg = 0u32;
    for (i, &(g, s)) in letters.iter().enumerate() {
        let dl = letter_differential(pres, g, s)?;
        if !dl.is_empty() {
            let suffix = pres.normalize_word(&letters[i + 1..])?;
            let sign = if prefix_deg % 2 == 1 { -Scalar::one() } else { Scalar::one() };
            for (dm, dc) in &dl {
                let left = pres.mul_monomials(&prefix, dm)?;
                for (lm, lc) in &left {
                    for (sm, sc) in &suffix {
                        let t = pres.mul_monomials(lm, sm)?;
                        add_terms(&mut out, &t, &(&(&sign * dc) * &(lc * sc)));
                    }
                }
            }
        }
        let next = pres.normalize_word(&[(g, s)])?;
        let (nm, _) = next.iter().next().expect("letter is a monomial");
        let p = pres.mul_monomials(&prefix, nm)?;
        match p.len() {
            1 => {
                let (pm, pc) = p.iter().next().unwrap();
                debug_assert!(pc.is_one());
                prefix = pm.clone();
            }
            _ => {
                // Prefixes of a normal monomial stay normal; anything else means the
                // presentation reorders inside its own normal words.
                return Err(Error::Presentation(format!(
                    "prefix of normal monomial `{}` is not normal",
                    pres.render_monomial(m)
                )));
            }
        }
        prefix_deg += pres.gen(g).form_degree;
    }
    Ok(out)
}

pub(crate) fn render_terms(pres: &Presentation, terms: &Terms) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let param = pres.param();
    let mut out = String::new();
    for (i, (m, c)) in terms.iter().enumerate() {
        let mono = pres.render_monomial(m);
        let (neg, body) = render_coeff_term(c, &mono, m.is_one(), param);
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

/// Renders `c·mono` as (is_negative, text without the leading sign).
pub(crate) fn render_coeff_term(c: &Scalar, mono: &str, is_one: bool, param: &str) -> (bool, String) {
    if c.is_unit() {
        let neg = c.terms().next().is_some_and(|(_, r)| r < &num_rational::BigRational::from_integer(0.into()));
        let abs = if neg { -c } else { c.clone() };
        let cs = abs.render(param);
        let body = if is_one {
            cs
        } else if abs.is_one() {
            mono.to_string()
        } else {
            format!("{cs}*{mono}")
        };
        (neg, body)
    } else {
        let cs = c.render(param);
        let body = if is_one { format!("({cs})") } else { format!("({cs})*{mono}") };
        (false, body)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Elem[{}]({})", self.pres.name(), self.render())
    }
}

impl std::ops::Add for &Elem {
    type Output = Elem;
    /// Panics on mismatched presentations; use `try_add` to handle that case.
    fn add(self, rhs: &Elem) -> Elem {
        self.try_add(rhs).expect("adding elements of different presentations")
    }
}

impl std::ops::Add for Elem {
    type Output = Elem;
    fn add(self, rhs: Elem) -> Elem {
        &self + &rhs
    }
}

impl std::ops::Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        self.scale(&-Scalar::one())
    }
}

impl std::ops::Neg for Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        -&self
    }
}

impl std::ops::Sub for &Elem {
    type Output = Elem;
    fn sub(self, rhs: &Elem) -> Elem {
        self + &(-rhs)
    }
}

impl std::ops::Sub for Elem {
    type Output = Elem;
    fn sub(self, rhs: Elem) -> Elem {
        &self - &rhs
    }
}
