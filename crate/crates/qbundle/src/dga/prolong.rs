//! Degree-two relations of the maximal prolongation of a left-covariant FODC.
//!
//! Two-forms are handled in a pair model: `Σ a·e_k·e_l` with the pair `e_k e_l`
//! kept formal. Every first-order relation `Σ a_i db_i = 0` contributes
//! `Σ da_i∧db_i = 0`; splitting by the algebra coefficient yields scalar
//! relations among the pairs, solved for the out-of-order pairs.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ncalg::{Echelon, Elem, Monomial, Presentation, QFrac, Scalar, Word};

/// Output of [`prolong_relations`]: wedge rules `first·second = rhs` and `d` of each basis form.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Prolongation {
    pub relations: Vec<(usize, usize, Vec<(Word, Scalar)>)>,
    pub differentials: Vec<(usize, Vec<(Word, Scalar)>)>,
}

type PairForm = BTreeMap<(Monomial, usize, usize), Scalar>;

/// `(class, k, l)` with out-of-order pairs (class 0) sorting first, so they become pivots.
type PairKey = (u8, usize, usize);

fn pair_key(k: usize, l: usize) -> PairKey {
    (if k >= l { 0 } else { 1 }, k, l)
}

fn split_one_form(pres: &Presentation, m: &Monomial) -> Result<(Monomial, usize)> {
    let b = m.blocks();
    match b.last() {
        Some(&(k, 1)) if pres.gen(k).form_degree == 1 && pres.form_degree(m) == 1 => {
            Ok((Monomial::from_blocks(b[..b.len() - 1].to_vec()), k))
        }
        _ => Err(Error::Other(format!("{} is not a left-normal 1-form monomial", pres.render_monomial(m)))),
    }
}

fn add(p: &mut PairForm, key: (Monomial, usize, usize), c: &Scalar) {
    let slot = p.entry(key.clone()).or_insert_with(Scalar::zero);
    *slot = &*slot + c;
    if slot.is_zero() {
        p.remove(&key);
    }
}

/// `da∧db` in the pair model, using the first-order commutation rules.
fn wedge_d(pres: &Arc<Presentation>, a: &Elem, b: &Elem) -> Result<PairForm> {
    let da = a.d()?;
    let db = b.d()?;
    let mut out = PairForm::new();
    for (m1, c1) in da.terms() {
        let (a1, k) = split_one_form(pres, m1)?;
        for (m2, c2) in db.terms() {
            let (a2, l) = split_one_form(pres, m2)?;
            let moved = Elem::monomial(pres, Monomial::single(k, 1)).mul(&Elem::monomial(pres, a2))?;
            for (m3, c3) in moved.terms() {
                let (a3, k3) = split_one_form(pres, m3)?;
                debug_assert_eq!(k3, k);
                let coeff = Elem::monomial(pres, a1.clone()).mul(&Elem::monomial(pres, a3))?;
                for (m4, c4) in coeff.terms() {
                    let c = &(&(c1 * c2) * c3) * c4;
                    add(&mut out, (m4.clone(), k, l), &c);
                }
            }
        }
    }
    Ok(out)
}

fn d_image(pres: &Arc<Presentation>, rel: &[(Elem, Elem)]) -> Result<PairForm> {
    let mut out = PairForm::new();
    for (a, b) in rel {
        for (key, c) in wedge_d(pres, a, b)? {
            add(&mut out, key, &c);
        }
    }
    Ok(out)
}

/// Witness `e_k = Σ x_j d(y_j)`; `d(g) = e_k` generators give `1·d(g)` automatically.
fn witness_for(
    pres: &Arc<Presentation>,
    k: usize,
    given: &BTreeMap<usize, Vec<(Elem, Elem)>>,
) -> Result<Vec<(Elem, Elem)>> {
    if let Some(w) = given.get(&k) {
        return Ok(w.clone());
    }
    let target = Elem::monomial(pres, Monomial::single(k, 1));
    for g in pres.algebra_gens() {
        let x = Elem::monomial(pres, Monomial::single(g, 1));
        if x.d()? == target {
            return Ok(vec![(Elem::one(pres), x)]);
        }
    }
    Err(Error::Other(format!("no witness writing {} as a*d(b)", pres.gen(k).name)))
}

/// A 1-form `Σ c·a·e_l` rewritten as `Σ a·x d(y)` pairs via the witnesses.
fn as_pairs(pres: &Arc<Presentation>, w: &Elem, wit: &BTreeMap<usize, Vec<(Elem, Elem)>>) -> Result<Vec<(Elem, Elem)>> {
    let mut out = Vec::new();
    for (m, c) in w.terms() {
        let (a, l) = split_one_form(pres, m)?;
        let a = Elem::monomial(pres, a).scale(c);
        for (x, y) in &wit[&l] {
            out.push((a.mul(x)?, y.clone()));
        }
    }
    Ok(out)
}

/// Degree-two relations and `d(e_k)` for a first-order calculus presentation.
pub fn prolong_relations(
    pres: &Arc<Presentation>,
    witnesses: &BTreeMap<usize, Vec<(Elem, Elem)>>,
) -> Result<Prolongation> {
    let forms: Vec<usize> = pres.form_gens().collect();
    let mut wit = BTreeMap::new();
    for &k in &forms {
        wit.insert(k, witness_for(pres, k, witnesses)?);
    }

    let mut first_order: Vec<Vec<(Elem, Elem)>> = Vec::new();
    // e_k·g = rhs  ⇒  Σ x d(y g) - x y dg - rhs
    for r in pres.relations() {
        let (k, g) = (r.first, r.second);
        if pres.gen(k).form_degree != 1 || pres.gen(g).form_degree != 0 {
            continue;
        }
        let ge = Elem::monomial(pres, Monomial::single(g, 1));
        let mut rel = Vec::new();
        for (x, y) in &wit[&k] {
            rel.push((x.clone(), y.mul(&ge)?));
            rel.push((-&x.mul(y)?, ge.clone()));
        }
        let mut rhs = Elem::zero(pres);
        for (w, c) in &r.rhs {
            rhs = &rhs + &Elem::word(pres, w)?.scale(c);
        }
        for (x, y) in as_pairs(pres, &rhs, &wit)? {
            rel.push((-&x, y));
        }
        first_order.push(rel);
    }
    // dg = Σ p_l e_l  ⇒  1·dg - Σ p_l x d(y)
    for g in pres.algebra_gens() {
        if pres.differential_of(g).is_none() {
            continue;
        }
        let ge = Elem::monomial(pres, Monomial::single(g, 1));
        let mut rel = vec![(Elem::one(pres), ge.clone())];
        for (x, y) in as_pairs(pres, &ge.d()?, &wit)? {
            rel.push((-&x, y));
        }
        first_order.push(rel);
    }

    let mut ech: Echelon<PairKey> = Echelon::new();
    for rel in &first_order {
        let img = d_image(pres, rel)?;
        let mut by_coeff: BTreeMap<Monomial, BTreeMap<PairKey, QFrac>> = BTreeMap::new();
        for ((m, k, l), c) in img {
            by_coeff.entry(m).or_default().insert(pair_key(k, l), QFrac::from_scalar(c));
        }
        for (_, v) in by_coeff {
            ech.insert(v);
        }
    }

    let mut out = Prolongation::default();
    for ((class, k, l), row) in ech.reduced_rows() {
        if class != 0 {
            return Err(Error::Other(format!(
                "prolongation kills the ordered pair {}*{}",
                pres.gen(k).name,
                pres.gen(l).name
            )));
        }
        let mut rhs = Vec::new();
        for (&(cl, a, b), c) in &row {
            if (cl, a, b) == (class, k, l) {
                continue;
            }
            if cl == 0 {
                return Err(Error::Other("unresolved out-of-order pair".into()));
            }
            let s = c.neg().to_scalar().ok_or_else(|| Error::Other("non-Laurent wedge coefficient".into()))?;
            rhs.push((vec![(a, 1), (b, 1)], s));
        }
        out.relations.push((k, l, rhs));
    }

    for &k in &forms {
        let mut dk = Vec::new();
        for (x, y) in &wit[&k] {
            for ((m, a, b), c) in wedge_d(pres, x, y)? {
                let mut w: Word = m.blocks().to_vec();
                w.push((a, 1));
                w.push((b, 1));
                dk.push((w, c));
            }
        }
        out.differentials.push((k, dk));
    }
    Ok(out)
}
