//! Exact sparse elimination over `Q(q)`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

use super::frac::QFrac;
use super::scalar::Scalar;
use super::tensor::{TensorElem, TensorKey};

pub type SparseVec<K> = BTreeMap<K, QFrac>;
pub type Combo = BTreeMap<usize, QFrac>;

fn axpy<K: Ord + Clone>(v: &mut BTreeMap<K, QFrac>, c: &QFrac, w: &BTreeMap<K, QFrac>) {
    for (k, x) in w {
        let delta = c.mul(x);
        match v.get_mut(k) {
            Some(slot) => {
                *slot = slot.sub(&delta);
                if slot.is_zero() {
                    v.remove(k);
                }
            }
            None => {
                v.insert(k.clone(), delta.neg());
            }
        }
    }
}

struct Row<K> {
    pivot: K,
    vec: SparseVec<K>,
    combo: Combo,
}

/// Incremental row echelon form that remembers how each row was built
/// from the inserted vectors. The pivot of a new row is its smallest key.
pub struct Echelon<K> {
    rows: Vec<Row<K>>,
    inserted: usize,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon { rows: Vec::new(), inserted: 0 }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    fn reduce(&self, v: &mut SparseVec<K>, combo: &mut Combo) {
        for row in &self.rows {
            if let Some(c) = v.get(&row.pivot).cloned() {
                axpy(v, &c, &row.vec);
                axpy(combo, &c, &row.combo);
            }
        }
    }

    /// Inserts a vector; returns a kernel relation among inserted vectors if it was dependent.
    pub fn insert(&mut self, v: SparseVec<K>) -> Option<Combo> {
        let idx = self.inserted;
        self.inserted += 1;
        let mut v = v;
        let mut combo = Combo::new();
        combo.insert(idx, QFrac::one());
        self.reduce(&mut v, &mut combo);
        let Some((pivot, lead)) = v.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return Some(combo);
        };
        let inv = lead.inv().expect("nonzero lead");
        for x in v.values_mut() {
            *x = x.mul(&inv);
        }
        for x in combo.values_mut() {
            *x = x.mul(&inv);
        }
        self.rows.push(Row { pivot, vec: v, combo });
        None
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        let mut v = v.clone();
        let mut combo = Combo::new();
        self.reduce(&mut v, &mut combo);
        v.is_empty()
    }

    /// Coefficients `x` with `Σ x_i v_i = target` over the inserted vectors, if any.
    pub fn express(&self, target: &SparseVec<K>) -> Option<Combo> {
        let mut v = target.clone();
        let mut combo = Combo::new();
        self.reduce(&mut v, &mut combo);
        if !v.is_empty() {
            return None;
        }
        // reduce subtracted multiples, so the expression is the negation
        Some(combo.into_iter().map(|(k, c)| (k, c.neg())).collect())
    }

    /// Fully reduced rows `(pivot, row)` with every other pivot eliminated.
    pub fn reduced_rows(&self) -> Vec<(K, SparseVec<K>)> {
        let mut rows: Vec<SparseVec<K>> = self.rows.iter().map(|r| r.vec.clone()).collect();
        for i in (0..rows.len()).rev() {
            for j in i + 1..rows.len() {
                let pj = &self.rows[j].pivot;
                if let Some(c) = rows[i].get(pj).cloned() {
                    let rj = rows[j].clone();
                    axpy(&mut rows[i], &c, &rj);
                }
            }
        }
        self.rows.iter().map(|r| r.pivot.clone()).zip(rows).collect()
    }
}

/// Result of a window solve.
#[derive(Clone, Debug)]
pub struct Solution {
    pub coefficients: Vec<Scalar>,
    /// Dimension of the solution space; nonzero means the returned point set free variables to 0.
    pub free_parameters: usize,
}

pub fn scalar_vec<K: Ord + Clone>(v: &BTreeMap<K, Scalar>) -> SparseVec<K> {
    v.iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k.clone(), QFrac::from_scalar(c.clone())))
        .collect()
}

/// Solves `Σ x_i columns_i = target`; coefficients must come out as Laurent polynomials.
pub fn solve<K: Ord + Clone>(columns: &[SparseVec<K>], target: &SparseVec<K>) -> Result<Solution> {
    let mut ech = Echelon::new();
    for c in columns {
        ech.insert(c.clone());
    }
    let combo = ech
        .express(target)
        .ok_or_else(|| Error::NoSolution("target outside the window span".into()))?;
    let mut coefficients = vec![Scalar::zero(); columns.len()];
    for (i, c) in combo {
        coefficients[i] = c
            .to_scalar()
            .ok_or_else(|| Error::NoSolution("solution needs a non-Laurent coefficient".into()))?;
    }
    Ok(Solution { coefficients, free_parameters: columns.len() - ech.rank() })
}

pub fn tensor_vec(t: &TensorElem) -> SparseVec<TensorKey> {
    scalar_vec(t.terms())
}

/// Finds `x = Σ c_i basis_i` with `op(x) = target`, where `op` is linear.
/// Returns the combination and the number of free parameters.
pub fn solve_linear<F>(
    basis: &[TensorElem],
    op: F,
    target: &TensorElem,
) -> Result<(TensorElem, usize)>
where
    F: Fn(&TensorElem) -> Result<TensorElem>,
{
    let Some(first) = basis.first() else {
        return if target.is_zero() {
            Err(Error::NoSolution("empty unknown basis".into()))
        } else {
            Err(Error::NoSolution("empty unknown basis, nonzero target".into()))
        };
    };
    let images: Vec<SparseVec<TensorKey>> =
        basis.iter().map(|b| op(b).map(|t| tensor_vec(&t))).collect::<Result<_>>()?;
    let sol = solve(&images, &tensor_vec(target))?;
    let mut x = TensorElem::zero(first.factors());
    for (b, c) in basis.iter().zip(&sol.coefficients) {
        if !c.is_zero() {
            x = &x + &b.scale(c);
        }
    }
    Ok((x, sol.free_parameters))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[(u32, i64)]) -> SparseVec<u32> {
        entries.iter().map(|&(k, c)| (k, QFrac::from_scalar(Scalar::from_int(c)))).collect()
    }

    #[test]
    fn solves_small_system() {
        let cols = vec![v(&[(0, 1), (1, 1)]), v(&[(1, 1)]), v(&[(0, 2), (1, 3)])];
        let sol = solve(&cols, &v(&[(0, 1), (1, 2)])).unwrap();
        assert_eq!(sol.free_parameters, 1);
        // check
        let mut acc: BTreeMap<u32, Scalar> = BTreeMap::new();
        for (c, col) in sol.coefficients.iter().zip(&cols) {
            for (k, x) in col {
                let e = acc.entry(*k).or_default();
                *e += &(c * &x.to_scalar().unwrap());
            }
        }
        assert_eq!(acc[&0], Scalar::from_int(1));
        assert_eq!(acc[&1], Scalar::from_int(2));
    }

    #[test]
    fn detects_no_solution() {
        let cols = vec![v(&[(0, 1)])];
        assert!(solve(&cols, &v(&[(1, 1)])).is_err());
    }

    #[test]
    fn kernel_relations() {
        let mut e = Echelon::new();
        assert!(e.insert(v(&[(0, 1), (1, 2)])).is_none());
        let k = e.insert(v(&[(0, 2), (1, 4)])).unwrap();
        assert_eq!(k.len(), 2);
    }
}
