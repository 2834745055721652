//! Presented graded algebras and their rewrite normalization.
//!
//! A presentation carries algebra generators (form degree 0, optionally invertible)
//! followed by form generators (form degree 1). Normal monomials list generator
//! powers in ascending generator order, so every form is written with its
//! coefficient on the left.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::scalar::Scalar;

/// Generator power `(generator index, exponent)`.
pub type Block = (usize, i32);

/// A word of generator powers, not necessarily normal.
pub type Word = Vec<Block>;

/// Linear combination of normal monomials.
pub type Terms = BTreeMap<Monomial, Scalar>;

pub(crate) fn add_term(terms: &mut Terms, m: Monomial, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&m) {
        Some(slot) => {
            *slot += c;
            if slot.is_zero() {
                terms.remove(&m);
            }
        }
        None => {
            terms.insert(m, c.clone());
        }
    }
}

pub(crate) fn add_terms(acc: &mut Terms, other: &Terms, scale: &Scalar) {
    for (m, c) in other {
        if scale.is_one() {
            add_term(acc, m.clone(), c);
        } else {
            add_term(acc, m.clone(), &(c * scale));
        }
    }
}

/// Normal-form monomial: strictly ascending generator indices, no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<Block>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn single(g: usize, e: i32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(g, e)])
        }
    }

    /// Caller guarantees the blocks are sorted and nonzero.
    pub fn from_blocks(blocks: Vec<Block>) -> Self {
        debug_assert!(blocks.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(blocks.iter().all(|b| b.1 != 0));
        Monomial(blocks)
    }

    pub fn blocks(&self) -> &[Block] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, g: usize) -> i32 {
        self.0.iter().find(|b| b.0 == g).map_or(0, |b| b.1)
    }

    /// Expands into single letters `(g, ±1)`.
    pub fn letters(&self) -> Vec<Block> {
        let mut out = Vec::new();
        for &(g, e) in &self.0 {
            for _ in 0..e.unsigned_abs() {
                out.push((g, e.signum()));
            }
        }
        out
    }

    pub fn total_letters(&self) -> u32 {
        self.0.iter().map(|b| b.1.unsigned_abs()).sum()
    }

    fn prefix(&self, n: usize) -> Monomial {
        Monomial(self.0[..n].to_vec())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub name: String,
    pub invertible: bool,
    /// Weight under the grouplike coaction, `Δ_A(f) = f ⊗ t^weight`.
    pub weight: i32,
    /// 0 for algebra generators, 1 for basis 1-forms.
    pub form_degree: u32,
}

impl GeneratorSpec {
    pub fn algebra(name: &str, invertible: bool, weight: i32) -> Self {
        GeneratorSpec { name: name.into(), invertible, weight, form_degree: 0 }
    }

    pub fn form(name: &str, weight: i32) -> Self {
        GeneratorSpec { name: name.into(), invertible: false, weight, form_degree: 1 }
    }
}

#[derive(Clone, Debug)]
pub enum Rule {
    /// `y·x = c·x·y` for `y` after `x`; extends to all integer powers.
    Skew(Scalar),
    /// `y·x → Σ c·w` applied to positive powers only.
    General(Vec<(Word, Scalar)>),
}

/// A defining relation as written: `first·second = rhs`.
#[derive(Clone, Debug)]
pub struct Relation {
    pub first: usize,
    pub second: usize,
    pub rhs: Vec<(Word, Scalar)>,
}

const MAX_DEPTH: usize = 512;

#[derive(Default)]
struct Budget {
    steps: usize,
    depth: usize,
}

pub struct Presentation {
    name: String,
    param: String,
    gens: Vec<GeneratorSpec>,
    index: HashMap<String, usize>,
    rules: HashMap<(usize, usize), Rule>,
    relations: Vec<Relation>,
    differential: Vec<Option<Terms>>,
    cap: u32,
    budget: usize,
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Presentation({})", self.name)
    }
}

pub struct PresentationBuilder {
    name: String,
    param: String,
    gens: Vec<GeneratorSpec>,
    relations: Vec<Relation>,
    differential: Vec<(usize, Vec<(Word, Scalar)>)>,
    cap: u32,
    budget: usize,
}

impl PresentationBuilder {
    pub fn param(mut self, p: &str) -> Self {
        self.param = p.into();
        self
    }

    pub fn generator(mut self, g: GeneratorSpec) -> Self {
        self.gens.push(g);
        self
    }

    pub fn add_generator(&mut self, g: GeneratorSpec) -> usize {
        self.gens.push(g);
        self.gens.len() - 1
    }

    pub fn generators(&self) -> &[GeneratorSpec] {
        &self.gens
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn relation(mut self, first: usize, second: usize, rhs: Vec<(Word, Scalar)>) -> Self {
        self.add_relation(first, second, rhs);
        self
    }

    pub fn add_relation(&mut self, first: usize, second: usize, rhs: Vec<(Word, Scalar)>) {
        self.relations.push(Relation { first, second, rhs });
    }

    /// `first·second = c·second·first`, the common skew shape.
    pub fn skew(self, first: usize, second: usize, c: Scalar) -> Self {
        self.relation(first, second, vec![(vec![(second, 1), (first, 1)], c)])
    }

    pub fn differential(mut self, g: usize, image: Vec<(Word, Scalar)>) -> Self {
        self.add_differential(g, image);
        self
    }

    pub fn add_differential(&mut self, g: usize, image: Vec<(Word, Scalar)>) {
        self.differential.push((g, image));
    }

    pub fn cap(mut self, cap: u32) -> Self {
        self.cap = cap;
        self
    }

    pub fn set_cap(&mut self, cap: u32) {
        self.cap = cap;
    }

    pub fn budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn build(self) -> Result<Arc<Presentation>> {
        let mut index = HashMap::new();
        for (i, g) in self.gens.iter().enumerate() {
            if index.insert(g.name.clone(), i).is_some() {
                return Err(Error::Presentation(format!("duplicate generator `{}`", g.name)));
            }
            if g.form_degree > 0 && g.invertible {
                return Err(Error::Presentation(format!("form `{}` cannot be invertible", g.name)));
            }
        }
        let first_form = self.gens.iter().position(|g| g.form_degree > 0);
        if let Some(ff) = first_form {
            if self.gens[ff..].iter().any(|g| g.form_degree == 0) {
                return Err(Error::Presentation(
                    "algebra generators must precede form generators".into(),
                ));
            }
        }
        let mut rules = HashMap::new();
        for rel in &self.relations {
            let (y, x) = (rel.first, rel.second);
            if y >= self.gens.len() || x >= self.gens.len() {
                return Err(Error::Presentation("relation uses unknown generator".into()));
            }
            let skew = y > x
                && rel.rhs.len() == 1
                && rel.rhs[0].0 == vec![(x, 1), (y, 1)];
            let rule = if skew {
                Rule::Skew(rel.rhs[0].1.clone())
            } else {
                if self.gens[y].invertible || self.gens[x].invertible {
                    return Err(Error::Presentation(format!(
                        "non-skew relation {}*{} involves an invertible generator",
                        self.gens[y].name, self.gens[x].name
                    )));
                }
                Rule::General(rel.rhs.clone())
            };
            if rules.insert((y, x), rule).is_some() {
                return Err(Error::Presentation(format!(
                    "two relations for {}*{}",
                    self.gens[y].name, self.gens[x].name
                )));
            }
        }
        let mut p = Presentation {
            name: self.name,
            param: self.param,
            gens: self.gens,
            index,
            rules,
            relations: self.relations,
            differential: Vec::new(),
            cap: self.cap,
            budget: self.budget,
        };
        let mut diff = vec![None; p.gens.len()];
        for (g, image) in &self.differential {
            let mut t = Terms::new();
            for (w, c) in image {
                add_terms(&mut t, &p.normalize_word(w)?, c);
            }
            diff[*g] = Some(t);
        }
        p.differential = diff;
        Ok(Arc::new(p))
    }
}

impl Presentation {
    pub fn builder(name: &str) -> PresentationBuilder {
        PresentationBuilder {
            name: name.into(),
            param: "q".into(),
            gens: Vec::new(),
            relations: Vec::new(),
            differential: Vec::new(),
            cap: 0,
            budget: 5_000_000,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn param(&self) -> &str {
        &self.param
    }

    pub fn gens(&self) -> &[GeneratorSpec] {
        &self.gens
    }

    pub fn gen(&self, i: usize) -> &GeneratorSpec {
        &self.gens[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn rule(&self, first: usize, second: usize) -> Option<&Rule> {
        self.rules.get(&(first, second))
    }

    pub fn algebra_gens(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.gens.len()).filter(|&i| self.gens[i].form_degree == 0)
    }

    pub fn form_gens(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.gens.len()).filter(|&i| self.gens[i].form_degree > 0)
    }

    /// `d` of a generator in normal form, if declared.
    pub fn differential_of(&self, g: usize) -> Option<&Terms> {
        self.differential.get(g).and_then(|d| d.as_ref())
    }

    pub fn has_differential(&self) -> bool {
        self.differential.iter().any(|d| d.is_some())
    }

    pub fn form_degree(&self, m: &Monomial) -> u32 {
        m.blocks()
            .iter()
            .map(|&(g, e)| self.gens[g].form_degree * e.max(0) as u32)
            .sum()
    }

    pub fn weight(&self, m: &Monomial) -> i32 {
        m.blocks().iter().map(|&(g, e)| self.gens[g].weight * e).sum()
    }

    /// Whether two presentations are the same object.
    pub fn same(a: &Arc<Presentation>, b: &Arc<Presentation>) -> bool {
        Arc::ptr_eq(a, b)
    }

    pub fn render_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".into();
        }
        let parts: Vec<String> = m
            .blocks()
            .iter()
            .map(|&(g, e)| {
                let n = &self.gens[g].name;
                if e == 1 {
                    n.clone()
                } else {
                    format!("{n}^{e}")
                }
            })
            .collect();
        parts.join("*")
    }

    pub fn render_word(&self, w: &[Block]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter()
            .map(|&(g, e)| {
                let n = &self.gens[g].name;
                if e == 1 {
                    n.clone()
                } else {
                    format!("{n}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Normal form of an arbitrary word.
    pub fn normalize_word(&self, word: &[Block]) -> Result<Terms> {
        let mut steps = Budget::default();
        self.mul_word(&Monomial::one(), word, &mut steps)
    }

    /// Normal form of `a·b` for normal monomials.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Result<Terms> {
        let mut steps = Budget::default();
        self.mul_word(a, b.blocks(), &mut steps)
    }

    /// Is `m` already a normal monomial (its own normal form)?
    pub fn is_normal(&self, m: &Monomial) -> Result<bool> {
        let t = self.normalize_word(m.blocks())?;
        Ok(t.len() == 1 && t.get(m).is_some_and(|c| c.is_one()))
    }

    fn check_domain(&self, g: usize, e: i32) -> Result<()> {
        if e < 0 && !self.gens[g].invertible {
            return Err(Error::ExponentDomain(self.gens[g].name.clone()));
        }
        Ok(())
    }

    fn within_cap(&self, m: &Monomial) -> bool {
        self.form_degree(m) <= self.cap
    }

    fn mul_word(&self, m: &Monomial, word: &[Block], steps: &mut Budget) -> Result<Terms> {
        let mut cur = Terms::new();
        cur.insert(m.clone(), Scalar::one());
        for &(x, e) in word {
            self.check_domain(x, e)?;
            let mut next = Terms::new();
            for (mm, c) in &cur {
                let t = self.mul_block(mm, x, e, steps)?;
                add_terms(&mut next, &t, c);
            }
            cur = next;
            if cur.is_empty() {
                break;
            }
        }
        Ok(cur)
    }

    fn mul_terms_word(&self, t: &Terms, word: &[Block], steps: &mut Budget) -> Result<Terms> {
        let mut out = Terms::new();
        for (m, c) in t {
            let r = self.mul_word(m, word, steps)?;
            add_terms(&mut out, &r, c);
        }
        Ok(out)
    }

    fn singleton(&self, m: Monomial) -> Terms {
        let mut t = Terms::new();
        if self.within_cap(&m) {
            t.insert(m, Scalar::one());
        }
        t
    }

    fn mul_block(&self, m: &Monomial, x: usize, e: i32, steps: &mut Budget) -> Result<Terms> {
        steps.steps += 1;
        steps.depth += 1;
        if steps.steps > self.budget || steps.depth > MAX_DEPTH {
            return Err(Error::RewriteBudget(self.name.clone()));
        }
        let r = self.mul_block_inner(m, x, e, steps);
        steps.depth -= 1;
        r
    }

    fn mul_block_inner(&self, m: &Monomial, x: usize, e: i32, steps: &mut Budget) -> Result<Terms> {
        if e == 0 {
            return Ok(self.singleton(m.clone()));
        }
        let blocks = m.blocks();
        let n = blocks.len();
        if n == 0 {
            if e >= 2 && self.rules.contains_key(&(x, x)) {
                return self.mul_block(&Monomial::single(x, 1), x, e - 1, steps);
            }
            return Ok(self.singleton(Monomial::single(x, e)));
        }
        let (y, k) = blocks[n - 1];
        if y == x && !self.rules.contains_key(&(x, x)) {
            let mut bs = blocks[..n - 1].to_vec();
            let s = k + e;
            if s != 0 {
                bs.push((x, s));
            }
            return Ok(self.singleton(Monomial(bs)));
        }
        match self.rules.get(&(y, x)) {
            Some(Rule::Skew(c)) => {
                // y^k x^e = c^{ke} x^e y^k
                let factor = c.pow(k as i64 * e as i64).ok_or_else(|| {
                    Error::NotInvertible(format!("skew factor {c} of {}", self.gens[y].name))
                })?;
                let left = self.mul_block(&m.prefix(n - 1), x, e, steps)?;
                let mut out = Terms::new();
                for (t, c0) in &left {
                    let r = self.mul_block(t, y, k, steps)?;
                    add_terms(&mut out, &r, &(c0 * &factor));
                }
                Ok(out)
            }
            Some(Rule::General(rhs)) => {
                if k <= 0 || e <= 0 {
                    return Err(Error::ExponentDomain(self.gens[x].name.clone()));
                }
                let mut pre = blocks[..n - 1].to_vec();
                if k > 1 {
                    pre.push((y, k - 1));
                }
                let pre = Monomial(pre);
                let mut out = Terms::new();
                for (w, c) in rhs {
                    let mut word = w.clone();
                    if e > 1 {
                        word.push((x, e - 1));
                    }
                    let r = self.mul_word(&pre, &word, steps)?;
                    add_terms(&mut out, &r, c);
                }
                Ok(out)
            }
            None if y < x => {
                // Look for an in-order rule z·x further left that x reaches by skew moves.
                let mut factor = Scalar::one();
                let mut j = n - 1;
                loop {
                    let (w, kw) = blocks[j];
                    match self.rules.get(&(x, w)) {
                        Some(Rule::Skew(c)) => {
                            let f = c.pow(-(kw as i64) * e as i64).ok_or_else(|| {
                                Error::NotInvertible(format!("skew factor {c}"))
                            })?;
                            factor = &factor * &f;
                        }
                        _ => break,
                    }
                    if j == 0 {
                        break;
                    }
                    j -= 1;
                    if let Some(Rule::General(_)) = self.rules.get(&(blocks[j].0, x)) {
                        let head = self.mul_block(&m.prefix(j + 1), x, e, steps)?;
                        let tail: Vec<Block> = blocks[j + 1..].to_vec();
                        let mut out = self.mul_terms_word(&head, &tail, steps)?;
                        for v in out.values_mut() {
                            *v = &*v * &factor;
                        }
                        return Ok(out);
                    }
                }
                let mut bs = blocks.to_vec();
                bs.push((x, e));
                Ok(self.singleton(Monomial(bs)))
            }
            None => Err(Error::MissingRule {
                presentation: self.name.clone(),
                first: self.gens[y].name.clone(),
                second: self.gens[x].name.clone(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus() -> Arc<Presentation> {
        Presentation::builder("torus")
            .generator(GeneratorSpec::algebra("u", true, 1))
            .generator(GeneratorSpec::algebra("v", true, -1))
            .skew(1, 0, Scalar::q_pow(1))
            .build()
            .unwrap()
    }

    fn suq2() -> Arc<Presentation> {
        let (a, b, c, d) = (0, 1, 2, 3);
        Presentation::builder("suq2")
            .generator(GeneratorSpec::algebra("alpha", false, 1))
            .generator(GeneratorSpec::algebra("beta", false, -1))
            .generator(GeneratorSpec::algebra("gamma", false, 1))
            .generator(GeneratorSpec::algebra("delta", false, -1))
            .skew(b, a, Scalar::q_pow(1))
            .skew(c, a, Scalar::q_pow(1))
            .skew(d, b, Scalar::q_pow(1))
            .skew(d, c, Scalar::q_pow(1))
            .skew(c, b, Scalar::one())
            .relation(d, a, vec![(vec![], Scalar::one()), (vec![(b, 1), (c, 1)], Scalar::q_pow(1))])
            .relation(a, d, vec![(vec![], Scalar::one()), (vec![(b, 1), (c, 1)], Scalar::q_pow(-1))])
            .build()
            .unwrap()
    }

    fn single(m: Vec<Block>, c: Scalar) -> Terms {
        let mut t = Terms::new();
        t.insert(Monomial::from_blocks(m), c);
        t
    }

    #[test]
    fn vu_is_q_uv() {
        let p = torus();
        assert_eq!(p.normalize_word(&[(1, 1), (0, 1)]).unwrap(), single(vec![(0, 1), (1, 1)], Scalar::q_pow(1)));
    }

    #[test]
    fn inverse_cancels() {
        let p = torus();
        assert_eq!(p.normalize_word(&[(0, 1), (0, -1)]).unwrap(), single(vec![], Scalar::one()));
    }

    #[test]
    fn uv_squared() {
        // v·u = q·u·v, so (uv)(uv) = u(vu)v = q·u^2 v^2
        let p = torus();
        let t = p.normalize_word(&[(0, 1), (1, 1), (0, 1), (1, 1)]).unwrap();
        assert_eq!(t, single(vec![(0, 2), (1, 2)], Scalar::q_pow(1)));
    }

    #[test]
    fn delta_alpha() {
        let p = suq2();
        let t = p.normalize_word(&[(3, 1), (0, 1)]).unwrap();
        let mut want = single(vec![], Scalar::one());
        want.insert(Monomial::from_blocks(vec![(1, 1), (2, 1)]), Scalar::q_pow(1));
        assert_eq!(t, want);
    }

    #[test]
    fn alpha_and_delta_never_mix() {
        let p = suq2();
        // alpha*beta*gamma*delta = q^-2 beta gamma + q^-3 beta^2 gamma^2
        let t = p.normalize_word(&[(0, 1), (1, 1), (2, 1), (3, 1)]).unwrap();
        let mut want = single(vec![(1, 1), (2, 1)], Scalar::q_pow(-2));
        want.insert(Monomial::from_blocks(vec![(1, 2), (2, 2)]), Scalar::q_pow(-3));
        assert_eq!(t, want);
        for m in t.keys() {
            assert!(!(m.exponent(0) > 0 && m.exponent(3) > 0));
        }
    }

    #[test]
    fn missing_rule_is_reported() {
        let p = Presentation::builder("free")
            .generator(GeneratorSpec::algebra("x", false, 0))
            .generator(GeneratorSpec::algebra("y", false, 0))
            .build()
            .unwrap();
        assert!(matches!(p.normalize_word(&[(1, 1), (0, 1)]), Err(Error::MissingRule { .. })));
    }

    #[test]
    fn runaway_rules_hit_the_budget() {
        // y·x → x·y + y·x never terminates
        let p = Presentation::builder("loop")
            .generator(GeneratorSpec::algebra("x", false, 0))
            .generator(GeneratorSpec::algebra("y", false, 0))
            .relation(1, 0, vec![(vec![(1, 1), (0, 1)], Scalar::one()), (vec![(0, 1)], Scalar::one())])
            .budget(10_000)
            .build()
            .unwrap();
        assert!(matches!(p.normalize_word(&[(1, 1), (0, 1)]), Err(Error::RewriteBudget(_))));
    }
}
