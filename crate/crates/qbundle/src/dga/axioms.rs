use std::sync::Arc;

use crate::check::{CheckOutcome, Tally};
use crate::error::Result;
use crate::ncalg::{Block, Echelon, Elem, Monomial, MonomialWindow, Presentation, QFrac, Scalar};

/// `d` of a word by the graded Leibniz rule, without normalizing the word first.
pub fn d_word(pres: &Arc<Presentation>, word: &[Block]) -> Result<Elem> {
    let mut out = Elem::zero(pres);
    let mut deg = 0u32;
    for (i, &(g, e)) in word.iter().enumerate() {
        let prefix = Elem::word(pres, &word[..i])?;
        let letter = Elem::word(pres, &[(g, e)])?;
        let suffix = Elem::word(pres, &word[i + 1..])?;
        let dl = letter.d()?;
        let term = prefix.mul(&dl)?.mul(&suffix)?;
        out = if deg % 2 == 1 { &out - &term } else { &out + &term };
        deg += pres.gen(g).form_degree * e.max(0) as u32;
    }
    Ok(out)
}

fn d_raw(pres: &Arc<Presentation>, poly: &[(Vec<Block>, Scalar)]) -> Result<Elem> {
    let mut out = Elem::zero(pres);
    for (w, c) in poly {
        out = &out + &d_word(pres, w)?.scale(c);
    }
    Ok(out)
}

/// Certifies a presentation as a differential calculus on the window:
/// `d² = 0`, graded Leibniz, `d` of every defining relation vanishes, and
/// every basis 1-form lies in `A·dA`.
pub fn dga_axiom_check(pres: &Arc<Presentation>, window: &MonomialWindow) -> Result<Vec<CheckOutcome>> {
    let basis = window.enumerate(pres)?;
    let mut dd = Tally::new("d-squared");
    for m in &basis {
        let x = Elem::monomial(pres, m.clone());
        let v = x.d()?.d()?;
        dd.record(v.is_zero(), || format!("d(d({x})) = {v}"));
    }

    let mut leibniz = Tally::new("leibniz");
    let small: Vec<&Monomial> = basis.iter().take(40).collect();
    for a in &small {
        for b in &small {
            let x = Elem::monomial(pres, (*a).clone());
            let y = Elem::monomial(pres, (*b).clone());
            let lhs = x.mul(&y)?.d()?;
            let first = x.d()?.mul(&y)?;
            let second = x.mul(&y.d()?)?;
            let rhs = if pres.form_degree(a) % 2 == 1 { &first - &second } else { &first + &second };
            leibniz.record(lhs == rhs, || format!("d({x} * {y}): {lhs} vs {rhs}"));
        }
    }

    let mut rel = Tally::new("relations-closed-under-d");
    for r in pres.relations() {
        let lhs = d_word(pres, &[(r.first, 1), (r.second, 1)])?;
        let rhs = d_raw(pres, &r.rhs)?;
        rel.record(lhs == rhs, || {
            format!(
                "d({}*{}) = {lhs} but d(rhs) = {rhs}",
                pres.gen(r.first).name,
                pres.gen(r.second).name
            )
        });
    }

    Ok(vec![dd.finish(), leibniz.finish(), rel.finish(), generation_check(pres, window)?])
}

/// Each basis 1-form is a combination `Σ a·db` of window monomials.
pub fn generation_check(pres: &Arc<Presentation>, window: &MonomialWindow) -> Result<CheckOutcome> {
    let mut t = Tally::new("generated-in-degree-one");
    let forms: Vec<usize> = pres.form_gens().collect();
    if forms.is_empty() {
        return Ok(t.finish());
    }
    let alg = window.clone().with_forms(0).enumerate(pres)?;
    for &k in &forms {
        let target = Elem::monomial(pres, Monomial::single(k, 1));
        let w = pres.gen(k).weight;
        let mut ech: Echelon<Monomial> = Echelon::new();
        for a in &alg {
            for b in &alg {
                if pres.weight(a) + pres.weight(b) != w {
                    continue;
                }
                let v = Elem::monomial(pres, a.clone()).mul(&Elem::monomial(pres, b.clone()).d()?)?;
                if !v.is_zero() {
                    ech.insert(vec_of(&v));
                }
            }
        }
        let ok = ech.contains(&vec_of(&target));
        t.record(ok, || format!("{} is not in the span of a*d(b) on the window", pres.gen(k).name));
    }
    Ok(t.finish())
}

pub(crate) fn vec_of(e: &Elem) -> std::collections::BTreeMap<Monomial, QFrac> {
    e.terms().iter().map(|(m, c)| (m.clone(), QFrac::from_scalar(c.clone()))).collect()
}
