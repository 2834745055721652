//! Finite windows of normal monomials.

use std::collections::BTreeMap;

use crate::error::Result;

use super::presentation::{Monomial, Presentation};

/// Exponent bounds per generator plus a cap on form degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialWindow {
    pub bound: u32,
    pub bounds: BTreeMap<String, u32>,
    pub max_form_degree: u32,
    pub max_letters: Option<u32>,
}

impl Default for MonomialWindow {
    fn default() -> Self {
        MonomialWindow::new(4)
    }
}

impl MonomialWindow {
    pub fn new(bound: u32) -> Self {
        MonomialWindow { bound, bounds: BTreeMap::new(), max_form_degree: 0, max_letters: None }
    }

    /// Only the unit monomial.
    pub fn empty() -> Self {
        MonomialWindow::new(0)
    }

    pub fn with_forms(mut self, degree: u32) -> Self {
        self.max_form_degree = degree;
        self
    }

    pub fn with_letters(mut self, n: u32) -> Self {
        self.max_letters = Some(n);
        self
    }

    pub fn with_bound(mut self, gen: &str, b: u32) -> Self {
        self.bounds.insert(gen.into(), b);
        self
    }

    fn bound_for(&self, name: &str) -> u32 {
        self.bounds.get(name).copied().unwrap_or(self.bound)
    }

    /// All normal monomials in the window, ordered by form degree, length, then index.
    pub fn enumerate(&self, pres: &Presentation) -> Result<Vec<Monomial>> {
        let max_deg = self.max_form_degree.min(pres.cap());
        let mut ranges: Vec<(usize, Vec<i32>)> = Vec::new();
        for (i, g) in pres.gens().iter().enumerate() {
            let r: Vec<i32> = if g.form_degree > 0 {
                if max_deg == 0 {
                    continue;
                }
                vec![0, 1]
            } else {
                let b = self.bound_for(&g.name) as i32;
                if g.invertible {
                    (-b..=b).collect()
                } else {
                    (0..=b).collect()
                }
            };
            ranges.push((i, r));
        }
        let mut out = Vec::new();
        let mut idx = vec![0usize; ranges.len()];
        loop {
            let mut blocks = Vec::new();
            let mut deg = 0u32;
            let mut letters = 0u32;
            for (j, (g, r)) in ranges.iter().enumerate() {
                let e = r[idx[j]];
                if e != 0 {
                    blocks.push((*g, e));
                    deg += pres.gen(*g).form_degree * e as u32;
                    letters += e.unsigned_abs();
                }
            }
            let ok = deg <= max_deg && self.max_letters.is_none_or(|n| letters <= n);
            if ok {
                let m = Monomial::from_blocks(blocks);
                if pres.is_normal(&m)? {
                    out.push((deg, letters, m));
                }
            }
            let mut j = 0;
            loop {
                if j == ranges.len() {
                    out.sort();
                    return Ok(out.into_iter().map(|x| x.2).collect());
                }
                idx[j] += 1;
                if idx[j] < ranges[j].1.len() {
                    break;
                }
                idx[j] = 0;
                j += 1;
            }
        }
    }

    /// Window monomials of a given coaction weight.
    pub fn enumerate_weight(&self, pres: &Presentation, weight: i32) -> Result<Vec<Monomial>> {
        Ok(self.enumerate(pres)?.into_iter().filter(|m| pres.weight(m) == weight).collect())
    }

    /// Window monomials of exactly the given form degree.
    pub fn enumerate_degree(&self, pres: &Presentation, degree: u32) -> Result<Vec<Monomial>> {
        Ok(self
            .enumerate(pres)?
            .into_iter()
            .filter(|m| pres.form_degree(m) == degree)
            .collect())
    }
}
