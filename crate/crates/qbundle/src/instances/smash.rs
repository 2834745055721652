//! Smash products `B#H` for a grouplike `H` acting on `B` by weights.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::check::{CheckOutcome, Tally};
use crate::cli::expr::{Scope, Value};
use crate::cli::instance_file::InstanceFile;
use crate::error::{Error, Result};
use crate::hopf::HopfStructure;
use crate::ncalg::{BasisRuleMap, Elem, Monomial, MonomialWindow, Presentation, Scalar, TensorElem};

use super::build::{add_relations, at_build, eval_in, generator_spec, letter_map, param_of};

/// `t^k·b = c_b^k b` on generators of `B` (algebra and form generators alike).
#[derive(Clone, Debug)]
pub struct WeightAction {
    pub pres: Arc<Presentation>,
    pub grouplike: usize,
    pub scalars: BTreeMap<usize, Scalar>,
}

impl WeightAction {
    pub fn is_base(&self, m: &Monomial) -> bool {
        m.blocks().iter().all(|(g, _)| self.scalars.contains_key(g))
    }

    /// `t^k · b` for `b` in `Ω•(B)`.
    pub fn act(&self, k: i32, b: &Elem) -> Result<Elem> {
        let mut out = Elem::zero(&self.pres);
        for (m, c) in b.terms() {
            if !self.is_base(m) {
                return Err(Error::Other(format!("{} is not in the base", self.pres.render_monomial(m))));
            }
            let mut s = c.clone();
            for &(g, e) in m.blocks() {
                let f = self.scalars[&g]
                    .pow(i64::from(k) * i64::from(e))
                    .ok_or_else(|| Error::NotInvertible("action scalar".into()))?;
                s = &s * &f;
            }
            out = &out + &Elem::monomial(&self.pres, m.clone()).scale(&s);
        }
        Ok(out)
    }

    /// Module-algebra and module-calculus laws for `t^k`, `|k| ≤ 2`, on base window pairs.
    pub fn check(&self, window: &MonomialWindow) -> Result<Vec<CheckOutcome>> {
        let base: Vec<Elem> = window
            .enumerate(&self.pres)?
            .into_iter()
            .filter(|m| self.is_base(m))
            .map(|m| Elem::monomial(&self.pres, m))
            .collect();
        let mut alg = Tally::new("module-algebra");
        let mut unit = Tally::new("module-unital");
        let mut calc = Tally::new("module-calculus");
        for k in -2..=2 {
            let one = Elem::one(&self.pres);
            let u = self.act(k, &one)?;
            unit.record(u == one, || format!("t^{k}.1 = {u}"));
            for b in base.iter().take(30) {
                for c in base.iter().take(30) {
                    let lhs = self.act(k, &b.mul(c)?)?;
                    let rhs = self.act(k, b)?.mul(&self.act(k, c)?)?;
                    alg.record(lhs == rhs, || format!("t^{k}.({b} * {c}): {lhs} vs {rhs}"));
                }
                let lhs = self.act(k, &b.d()?)?;
                let rhs = self.act(k, b)?.d()?;
                calc.record(lhs == rhs, || format!("t^{k}.d({b}): {lhs} vs {rhs}"));
            }
        }
        Ok(vec![alg.finish(), unit.finish(), calc.finish()])
    }
}

pub(crate) struct SmashParts {
    pub total: Arc<Presentation>,
    pub coaction: BasisRuleMap,
    pub inclusion: BasisRuleMap,
    pub action: WeightAction,
}

/// Builds `Ω•(B#H)`: generators of `B` then `H` (algebra before forms), the
/// relations of both factors, and the cross rules from the weight action and
/// the smash wedge sign.
pub(crate) fn assemble(file: &InstanceFile, hopf: &Arc<HopfStructure>, name: &str) -> Result<SmashParts> {
    let h = hopf.pres();
    let param = param_of(file)?;
    let mut b = Presentation::builder(name).param(&param);
    let specs: Vec<_> = file.lines.iter().filter(|l| l.keyword == "gen" || l.keyword == "form").collect();
    let mut base_alg = Vec::new();
    let mut base_form = Vec::new();
    for l in &specs {
        let g = generator_spec(l)?;
        if g.weight != 0 {
            return Err(l.err("base generators of a smash product carry weight 0"));
        }
        if g.form_degree == 0 { base_alg.push(g) } else { base_form.push(g) }
    }
    let h_alg: Vec<usize> = h.algebra_gens().collect();
    let h_form: Vec<usize> = h.form_gens().collect();
    let grouplikes: Vec<usize> = h_alg.iter().copied().filter(|&g| h.gen(g).invertible).collect();
    if h_alg.len() != 1 || grouplikes.len() != 1 {
        return Err(Error::Other("the smash builder needs a structure with one grouplike generator".into()));
    }
    for g in base_alg.into_iter() {
        b.add_generator(g);
    }
    for &g in &h_alg {
        b.add_generator(h.gen(g).clone());
    }
    for g in base_form.into_iter() {
        b.add_generator(g);
    }
    for &g in &h_form {
        b.add_generator(h.gen(g).clone());
    }
    let index = |b: &crate::ncalg::PresentationBuilder, g: usize| b.index_of(&h.gen(g).name).expect("copied generator");
    add_relations(file, &mut b, &param)?;
    for r in h.relations() {
        let rhs = r.rhs.iter().map(|(w, c)| (w.iter().map(|&(g, e)| (index(&b, g), e)).collect(), c.clone())).collect();
        let (y, x) = (index(&b, r.first), index(&b, r.second));
        b.add_relation(y, x, rhs);
    }
    for &g in h_alg.iter().chain(&h_form) {
        let img = h.differential_of(g).cloned().unwrap_or_default();
        let words = img.iter().map(|(m, c)| (m.blocks().iter().map(|&(x, e)| (index(&b, x), e)).collect(), c.clone())).collect();
        let i = index(&b, g);
        b.add_differential(i, words);
    }
    if h.cap() < 2 {
        for &y in &h_form {
            for &x in &h_form {
                if y >= x {
                    let (iy, ix) = (index(&b, y), index(&b, x));
                    b.add_relation(iy, ix, Vec::new());
                }
            }
        }
    }

    let probe = Presentation::builder("probe").param(&param);
    let probe = specs.iter().fold(probe, |p, l| p.generator(generator_spec(l).expect("checked above")));
    let probe = probe.build()?;
    let scope = Scope::new(&probe);
    let mut scalars_by_name: BTreeMap<String, Scalar> = BTreeMap::new();
    for l in file.all("act") {
        let (lhs, rhs) = l.equation()?;
        match eval_in(l, rhs, &scope)? {
            Value::Scalar(s) if s.is_unit() => {
                scalars_by_name.insert(lhs.to_string(), s);
            }
            _ => return Err(l.err("`act` needs a unit scalar such as q^2")),
        }
    }
    for l in file.all("d") {
        let (lhs, rhs) = l.equation()?;
        if let (Some(s), true) = (scalars_by_name.get(lhs).cloned(), probe.index_of(rhs).is_some()) {
            scalars_by_name.entry(rhs.to_string()).or_insert(s);
        }
    }
    let t = index(&b, grouplikes[0]);
    let dt: Vec<usize> = h_form.iter().map(|&f| index(&b, f)).collect();
    let mut scalars = BTreeMap::new();
    for l in &specs {
        let g = generator_spec(l)?;
        let c = scalars_by_name.get(&g.name).cloned().ok_or_else(|| l.err(format!("no `act` scalar for `{}`", g.name)))?;
        let i = b.index_of(&g.name).expect("declared");
        if g.form_degree == 0 {
            b.add_relation(t, i, vec![(vec![(i, 1), (t, 1)], c.clone())]);
            for &f in &dt {
                b.add_relation(f, i, vec![(vec![(i, 1), (f, 1)], c.clone())]);
            }
        } else {
            let ci = c.inverse().expect("unit");
            b.add_relation(i, t, vec![(vec![(t, 1), (i, 1)], ci)]);
            for &f in &dt {
                b.add_relation(f, i, vec![(vec![(i, 1), (f, 1)], -c.clone())]);
            }
        }
        scalars.insert(i, c);
    }
    let cap = match file.one("cap")? {
        Some(l) => l.int()? as u32,
        None => 1 + h.cap(),
    };
    b.set_cap(cap);
    let total = at_build(file, b)?;

    let mut inc = BTreeMap::new();
    for g in 0..h.gens().len() {
        let i = total.index_of(&h.gen(g).name).expect("copied");
        inc.insert(g, TensorElem::from_elem(&Elem::monomial(&total, Monomial::single(i, 1))));
    }
    let inclusion = letter_map("inclusion", h, &[total.clone()], inc)?;
    let mut co = BTreeMap::new();
    let one_h = Elem::one(h);
    for (i, g) in total.gens().iter().enumerate() {
        let img = match h.index_of(&g.name) {
            Some(hg) => {
                let d = hopf.coproduct(&Elem::monomial(h, Monomial::single(hg, 1)))?;
                inclusion.apply_at(&d, 0)?
            }
            None => TensorElem::pure(&[&Elem::monomial(&total, Monomial::single(i, 1)), &one_h]),
        };
        co.insert(i, img);
    }
    let coaction = letter_map("coaction", &total, &[total.clone(), h.clone()], co)?;
    Ok(SmashParts { total: total.clone(), coaction, inclusion, action: WeightAction { pres: total, grouplike: t, scalars } })
}
