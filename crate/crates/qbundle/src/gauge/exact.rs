//! Forms written as sums of `a₀da₁∧…∧daₖ`, and maps extended to forms by
//! `a₀da₁∧…∧daₖ ↦ F(a₀)dF(a₁)∧…∧dF(aₖ)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ncalg::{Elem, Monomial, Presentation};

/// A chain `[a₀, a₁, …, aₖ]` standing for `a₀da₁∧…∧daₖ`.
pub type Chain = Vec<Elem>;

/// Witnesses `g = Σ xᵢdyᵢ` for every basis form generator.
#[derive(Clone, Debug)]
pub struct ExactForms {
    pres: Arc<Presentation>,
    witnesses: BTreeMap<usize, Vec<(Elem, Elem)>>,
}

fn is_constant(e: &Elem) -> bool {
    e.terms().keys().all(Monomial::is_one)
}

impl ExactForms {
    /// Uses the given witnesses, and `(1, x)` for a form generator that is `d` of an algebra generator `x`.
    pub fn new(pres: &Arc<Presentation>, explicit: &BTreeMap<usize, Vec<(Elem, Elem)>>) -> Result<Self> {
        let mut witnesses = explicit.clone();
        for x in pres.algebra_gens() {
            let Some(img) = pres.differential_of(x) else { continue };
            if img.len() != 1 {
                continue;
            }
            let (m, c) = img.iter().next().expect("one term");
            if let ([(g, 1)], true) = (m.blocks(), c.is_one()) {
                let g = *g;
                if pres.gen(g).form_degree == 1 {
                    witnesses.entry(g).or_insert_with(|| {
                        vec![(Elem::one(pres), Elem::monomial(pres, Monomial::single(x, 1)))]
                    });
                }
            }
        }
        Ok(ExactForms { pres: pres.clone(), witnesses })
    }

    pub fn pres(&self) -> &Arc<Presentation> {
        &self.pres
    }

    /// `(a₀da₁∧…∧daₖ)·c` rewritten by `daₖ·c = d(aₖc) - aₖdc`.
    fn mul_right(chain: &[Elem], c: &Elem) -> Result<Vec<Chain>> {
        if chain.len() == 1 {
            return Ok(vec![vec![chain[0].mul(c)?]]);
        }
        let (last, prefix) = chain.split_last().expect("nonempty");
        let mut out = Vec::new();
        let mut first = prefix.to_vec();
        first.push(last.mul(c)?);
        out.push(first);
        for mut p in Self::mul_right(prefix, last)? {
            p[0] = -&p[0];
            p.push(c.clone());
            out.push(p);
        }
        Ok(out.into_iter().filter(|ch| !ch[0].is_zero() && !ch[1..].iter().any(is_constant)).collect())
    }

    /// Chains whose sum is `w`.
    pub fn decompose(&self, w: &Elem) -> Result<Vec<Chain>> {
        let p = &self.pres;
        let mut out = Vec::new();
        for (m, c) in w.terms() {
            let mut chains: Vec<Chain> = vec![vec![Elem::scalar(p, c.clone())]];
            for (g, e) in m.letters() {
                let letter = Elem::monomial(p, Monomial::single(g, e));
                let mut next = Vec::new();
                if p.gen(g).form_degree == 0 {
                    for ch in &chains {
                        next.extend(Self::mul_right(ch, &letter)?);
                    }
                } else {
                    let wit = self.witnesses.get(&g).ok_or_else(|| {
                        Error::NoSolution(format!("no witness g = x dy for `{}`", p.gen(g).name))
                    })?;
                    for ch in &chains {
                        for (x, y) in wit {
                            for mut piece in Self::mul_right(ch, x)? {
                                piece.push(y.clone());
                                if !is_constant(y) {
                                    next.push(piece);
                                }
                            }
                        }
                    }
                }
                chains = next;
            }
            out.extend(chains);
        }
        Ok(out)
    }

    /// `Σ a₀da₁∧…∧daₖ`.
    pub fn recompose(&self, chains: &[Chain]) -> Result<Elem> {
        self.extend_chains(chains, &self.pres, |a| Ok(a.clone()))
    }

    fn extend_chains<F>(&self, chains: &[Chain], target: &Arc<Presentation>, f: F) -> Result<Elem>
    where
        F: Fn(&Elem) -> Result<Elem>,
    {
        let mut out = Elem::zero(target);
        for ch in chains {
            let mut acc = f(&ch[0])?;
            for a in &ch[1..] {
                acc = acc.mul(&f(a)?.d()?)?;
            }
            out = &out + &acc;
        }
        Ok(out)
    }

    /// `Σ F(a₀)dF(a₁)∧…∧dF(aₖ)` over the chains of `w`; `F` acts on functions only.
    pub fn extend<F>(&self, w: &Elem, target: &Arc<Presentation>, f: F) -> Result<Elem>
    where
        F: Fn(&Elem) -> Result<Elem>,
    {
        self.extend_chains(&self.decompose(w)?, target, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;
    use crate::ncalg::MonomialWindow;

    #[test]
    fn decompositions_recompose() {
        for name in ["torus", "su_q2", "smash_w"] {
            let b = instances::load(name).unwrap();
            let ex = ExactForms::new(b.total(), &b.witnesses).unwrap();
            let win = MonomialWindow::new(2).with_forms(2);
            for m in win.enumerate(b.total()).unwrap().into_iter().take(60) {
                let w = Elem::monomial(b.total(), m);
                let back = ex.recompose(&ex.decompose(&w).unwrap()).unwrap();
                assert_eq!(back, w, "{name}");
            }
        }
    }

    #[test]
    fn torus_chain_of_u_inverse_du() {
        let b = instances::torus_bundle().unwrap();
        let ex = ExactForms::new(b.total(), &b.witnesses).unwrap();
        let w = b.eval("u^-1*du").unwrap();
        let chains = ex.decompose(&w).unwrap();
        assert_eq!(chains, vec![vec![b.eval("u^-1").unwrap(), b.eval("u").unwrap()]]);
    }
}
