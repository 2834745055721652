//! Window suites: completeness of the calculus, the Atiyah sequence and the vertical calculus.

use std::collections::BTreeMap;

use crate::check::{CheckOutcome, Tally};
use crate::error::Result;
use crate::ncalg::linsolve::{tensor_vec, Combo, SparseVec};
use crate::ncalg::{Echelon, Elem, Monomial, MonomialWindow, QFrac, TensorKey};

use super::BundleCalculus;

pub(crate) fn elem_vec(e: &Elem) -> SparseVec<Monomial> {
    e.terms().iter().map(|(m, c)| (m.clone(), QFrac::from_scalar(c.clone()))).collect()
}

pub(crate) fn combine<K: Ord + Clone>(combo: &Combo, vecs: &[SparseVec<K>]) -> SparseVec<K> {
    let mut out: SparseVec<K> = BTreeMap::new();
    for (i, c) in combo {
        for (k, x) in &vecs[*i] {
            let slot = out.entry(k.clone()).or_insert_with(QFrac::zero);
            *slot = slot.add(&c.mul(x));
        }
    }
    out.retain(|_, x| !x.is_zero());
    out
}

/// Kernel of the linear map with the given images of basis vectors.
pub(crate) fn kernel<K: Ord + Clone>(images: &[SparseVec<K>]) -> Vec<Combo> {
    let mut ech = Echelon::new();
    images.iter().filter_map(|v| ech.insert(v.clone())).collect()
}

fn render_combo(combo: &Combo, basis: &[Elem]) -> String {
    combo
        .iter()
        .map(|(i, c)| format!("({}/{})*{}", c.numer(), c.denom(), basis[*i]))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// `Δ_A•` is multiplicative on window form pairs and commutes with `d`.
pub fn completeness_check(calc: &BundleCalculus, window: &MonomialWindow) -> Result<Vec<CheckOutcome>> {
    let a = calc.total();
    let basis: Vec<Elem> = window.enumerate(a)?.into_iter().map(|m| Elem::monomial(a, m)).collect();
    let mut mult = Tally::new("extended-coaction-multiplicative");
    let mut dcomm = Tally::new("extended-coaction-commutes-with-d");
    let mut restrict = Tally::new("extended-coaction-degree-zero");
    for x in &basis {
        let lhs = calc.extended_coaction(&x.d()?)?;
        let rhs = calc.extended_coaction(x)?.differential()?;
        dcomm.record(lhs == rhs, || format!("w = {x}: {lhs} vs {rhs}"));
        if x.form_degree() == Some(0) {
            let d = calc.extended_coaction(x)?;
            let ok = d.terms().keys().all(|k| d.degrees(k) == [0, 0]);
            restrict.record(ok, || format!("a = {x}: {d}"));
        }
    }
    let small: Vec<&Elem> = basis.iter().filter(|e| !e.is_zero()).take(30).collect();
    for x in &small {
        for y in &small {
            let lhs = calc.extended_coaction(&x.mul(y)?)?;
            let rhs = calc.extended_coaction(x)?.mul(&calc.extended_coaction(y)?)?;
            mult.record(lhs == rhs, || format!("{x} * {y}: {lhs} vs {rhs}"));
        }
    }
    Ok(vec![mult.finish().windowed(), dcomm.finish().windowed(), restrict.finish().windowed()])
}

/// Exactness of `0 → hor¹ → Ω¹(A) → A⊗Λ¹ → 0` on the window, and
/// `hor¹ = A·Ω¹(B)·A` there:
/// (a) `π_v` vanishes on horizontal forms, (b) `ker π_v` is horizontal,
/// (c) `π_v` reaches every `a⊗λ`, (d) horizontal forms are spanned by `x·db·y`.
pub fn atiyah_check(calc: &BundleCalculus, window: &MonomialWindow) -> Result<Vec<CheckOutcome>> {
    let a = calc.total();
    let ones: Vec<Elem> = window
        .clone()
        .with_forms(1)
        .enumerate_degree(a, 1)?
        .into_iter()
        .map(|m| Elem::monomial(a, m))
        .collect();
    let ver: Vec<SparseVec<TensorKey>> =
        ones.iter().map(|w| calc.vertical_part(w).map(|t| tensor_vec(&t))).collect::<Result<_>>()?;
    let pv: Vec<SparseVec<TensorKey>> =
        ones.iter().map(|w| calc.vertical_projection(w).map(|t| tensor_vec(&t))).collect::<Result<_>>()?;

    let hor = kernel(&ver);
    let mut ta = Tally::new("atiyah-horizontal-in-kernel");
    for k in &hor {
        let v = combine(k, &pv);
        ta.record(v.is_empty(), || format!("pi_v({}) != 0", render_combo(k, &ones)));
    }
    let mut tb = Tally::new("atiyah-kernel-horizontal");
    for k in kernel(&pv) {
        let v = combine(&k, &ver);
        tb.record(v.is_empty(), || format!("{} is in ker pi_v but not horizontal", render_combo(&k, &ones)));
    }

    let mut tc = Tally::new("atiyah-projection-surjective");
    let mut image = Echelon::new();
    for v in &pv {
        image.insert(v.clone());
    }
    let inner = MonomialWindow::new(window.bound.saturating_sub(1));
    for m in inner.enumerate_degree(a, 0)? {
        let x = Elem::monomial(a, m);
        for l in calc.lambda() {
            let target = calc.vertical(&x, l);
            tc.record(image.contains(&tensor_vec(&target)), || format!("{target} is not reached"));
        }
    }

    let mut td = Tally::new("atiyah-horizontal-generated-by-base");
    let base: Vec<Elem> = calc
        .comodule()
        .coinvariant_basis(&MonomialWindow::new(1))?
        .into_iter()
        .filter(|b| !b.d().is_ok_and(|d| d.is_zero()))
        .collect();
    let lefts = MonomialWindow::new(window.bound + 2).enumerate_degree(a, 0)?;
    let rights = MonomialWindow::new(1).enumerate_degree(a, 0)?;
    let mut span = Echelon::new();
    for b in &base {
        let db = b.d()?;
        for r in &rights {
            let dbr = db.mul(&Elem::monomial(a, r.clone()))?;
            if dbr.is_zero() {
                continue;
            }
            let horizontal = calc.is_horizontal(&dbr)?;
            td.record(horizontal, || format!("d({b})*{} is not horizontal", a.render_monomial(r)));
            for l in &lefts {
                let x = Elem::monomial(a, l.clone()).mul(&dbr)?;
                if !x.is_zero() {
                    span.insert(elem_vec(&x));
                }
            }
        }
    }
    let vecs: Vec<SparseVec<Monomial>> = ones.iter().map(elem_vec).collect();
    for k in &hor {
        let v = combine(k, &vecs);
        td.record(span.contains(&v), || format!("{} is not in A.d(B).A", render_combo(k, &ones)));
    }

    Ok(vec![ta.finish().windowed(), tb.finish().windowed(), tc.finish().windowed(), td.finish().windowed()])
}

/// `ver•` is a DGA and `π_v` a DGA morphism onto it, on window forms.
pub fn vertical_calculus_check(calc: &BundleCalculus, window: &MonomialWindow) -> Result<Vec<CheckOutcome>> {
    let a = calc.total();
    let h = calc.structure();
    let degree0: Vec<Elem> = window.enumerate_degree(a, 0)?.into_iter().map(|m| Elem::monomial(a, m)).collect();
    let mut thetas = vec![Elem::one(h)];
    thetas.extend(calc.lambda().iter().cloned());
    let mut vs = Vec::new();
    for x in degree0.iter().take(12) {
        for t in &thetas {
            vs.push(calc.vertical(x, t));
        }
    }
    let mut dd = Tally::new("vertical-d-squared");
    let mut leib = Tally::new("vertical-leibniz");
    for x in &vs {
        let v = calc.vertical_d(&calc.vertical_d(x)?)?;
        dd.record(v.is_zero(), || format!("d_v(d_v({x})) = {v}"));
        for y in &vs {
            let lhs = calc.vertical_d(&calc.vertical_wedge(x, y)?)?;
            let first = calc.vertical_wedge(&calc.vertical_d(x)?, y)?;
            let second = calc.vertical_wedge(x, &calc.vertical_d(y)?)?;
            let odd = x.total_degree().unwrap_or(0) % 2 == 1;
            let rhs = if odd { &first - &second } else { &first + &second };
            leib.record(lhs == rhs, || format!("d_v({x} /\\ {y}): {lhs} vs {rhs}"));
        }
    }
    let mut chain = Tally::new("vertical-projection-commutes-with-d");
    let mut mult = Tally::new("vertical-projection-multiplicative");
    let forms: Vec<Elem> = window.enumerate(a)?.into_iter().map(|m| Elem::monomial(a, m)).collect();
    let small: Vec<&Elem> = forms.iter().take(20).collect();
    for x in &forms {
        let lhs = calc.vertical_projection(&x.d()?)?;
        let rhs = calc.vertical_d(&calc.vertical_projection(x)?)?;
        chain.record(lhs == rhs, || format!("w = {x}: {lhs} vs {rhs}"));
    }
    for x in &small {
        for y in &small {
            let lhs = calc.vertical_projection(&x.mul(y)?)?;
            let rhs = calc.vertical_wedge(&calc.vertical_projection(x)?, &calc.vertical_projection(y)?)?;
            mult.record(lhs == rhs, || format!("{x} * {y}: {lhs} vs {rhs}"));
        }
    }
    Ok(vec![dd.finish().windowed(), leib.finish().windowed(), chain.finish().windowed(), mult.finish().windowed()])
}

/// Horizontal forms of the window are closed under products, and basic forms under `d`.
pub fn horizontal_subalgebra_check(calc: &BundleCalculus, window: &MonomialWindow) -> Result<Vec<CheckOutcome>> {
    let a = calc.total();
    let ones: Vec<Elem> = window
        .clone()
        .with_forms(1)
        .enumerate_degree(a, 1)?
        .into_iter()
        .map(|m| Elem::monomial(a, m))
        .collect();
    let ver: Vec<SparseVec<TensorKey>> =
        ones.iter().map(|w| calc.vertical_part(w).map(|t| tensor_vec(&t))).collect::<Result<_>>()?;
    let hor: Vec<Elem> = kernel(&ver)
        .into_iter()
        .take(12)
        .map(|k| {
            let mut den = crate::ncalg::Scalar::one();
            for c in k.values() {
                den = &den * c.denom();
            }
            let mut e = Elem::zero(a);
            for (i, c) in &k {
                let s = c.mul(&QFrac::from_scalar(den.clone())).to_scalar().expect("cleared denominator");
                e = &e + &ones[*i].scale(&s);
            }
            e
        })
        .collect();
    let mut wedge = Tally::new("horizontal-closed-under-wedge");
    for x in &hor {
        for y in &hor {
            let p = x.mul(y)?;
            wedge.record(calc.is_horizontal(&p)?, || format!("({x}) /\\ ({y}) is not horizontal"));
        }
    }
    let mut basic = Tally::new("basic-closed-under-d");
    for b in calc.comodule().coinvariant_basis(window)? {
        let db = b.d()?;
        basic.record(calc.is_basic(&db)?, || format!("d({b}) is not basic"));
        for c in calc.comodule().coinvariant_basis(&MonomialWindow::new(1))? {
            let w = c.mul(&db)?;
            basic.record(calc.is_basic(&w)? && calc.is_basic(&w.d()?)?, || format!("{c} d({b})"));
        }
    }
    Ok(vec![wedge.finish().windowed(), basic.finish().windowed()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;

    fn assert_all(outcomes: Vec<CheckOutcome>) {
        for o in &outcomes {
            assert!(o.ok(), "{} failed: {:?}", o.check, o.witness);
        }
    }

    #[test]
    fn torus_suites() {
        let b = instances::torus_bundle().unwrap();
        let c = b.calculus().unwrap();
        let w = MonomialWindow::new(2).with_forms(2);
        assert_all(completeness_check(&c, &w).unwrap());
        let at = atiyah_check(&c, &MonomialWindow::new(2)).unwrap();
        assert_eq!(at.len(), 4);
        assert_all(at);
        assert_all(vertical_calculus_check(&c, &MonomialWindow::new(1).with_forms(1)).unwrap());
        assert_all(horizontal_subalgebra_check(&c, &MonomialWindow::new(1)).unwrap());
    }

    #[test]
    fn other_instances_atiyah() {
        for name in ["su_q2", "smash_w", "hopf_u1"] {
            let b = instances::load(name).unwrap();
            let c = b.calculus().unwrap();
            let w = MonomialWindow::new(1);
            for o in atiyah_check(&c, &w).unwrap() {
                assert!(o.ok(), "{name}: {} failed: {:?}", o.check, o.witness);
            }
            for o in completeness_check(&c, &w.clone().with_forms(2)).unwrap() {
                assert!(o.ok(), "{name}: {} failed: {:?}", o.check, o.witness);
            }
        }
    }
}
