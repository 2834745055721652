//! Complete calculi on Hopf–Galois extensions: the extended coaction,
//! vertical and horizontal forms, the Atiyah sequence and the graded braiding.

pub mod braiding;
pub mod checks;

use std::sync::Arc;

use crate::dga::cartan_maurer;
use crate::error::{Error, Result};
use crate::hopf::{ComoduleAlgebra, GaloisExtension, HopfStructure};
use crate::ncalg::{Elem, Presentation, TensorElem};

pub use braiding::{
    cleft_translation_check, graded_braid_relation, smash_braiding_display, torus_generator_braiding,
    wedge_braiding_check,
};
pub use checks::{atiyah_check, completeness_check, horizontal_subalgebra_check, vertical_calculus_check};

/// `Ω•(A)` over `Ω•(H)` with the extended coaction `Δ_A•`, and a basis of
/// the left-invariant 1-forms `Λ¹ ⊆ Ω¹(H)`.
#[derive(Clone, Debug)]
pub struct BundleCalculus {
    galois: Arc<GaloisExtension>,
    lambda: Vec<Elem>,
}

impl BundleCalculus {
    pub fn new(galois: Arc<GaloisExtension>, lambda: Vec<Elem>) -> Result<Self> {
        let h = galois.structure().clone();
        for l in &lambda {
            if !Arc::ptr_eq(l.pres(), &h) || l.form_degree() != Some(1) {
                return Err(Error::Other(format!("{l} is not a 1-form on the structure algebra")));
            }
        }
        Ok(BundleCalculus { galois, lambda })
    }

    pub fn galois(&self) -> &Arc<GaloisExtension> {
        &self.galois
    }

    pub fn comodule(&self) -> &ComoduleAlgebra {
        self.galois.comodule()
    }

    pub fn hopf(&self) -> &Arc<HopfStructure> {
        self.galois.comodule().hopf()
    }

    pub fn total(&self) -> &Arc<Presentation> {
        self.galois.total()
    }

    pub fn structure(&self) -> &Arc<Presentation> {
        self.galois.structure()
    }

    pub fn lambda(&self) -> &[Elem] {
        &self.lambda
    }

    fn ah(&self) -> [Arc<Presentation>; 2] {
        [self.total().clone(), self.structure().clone()]
    }

    /// `Δ_A•(ω) ∈ Ω•(A)⊗Ω•(H)`.
    pub fn extended_coaction(&self, w: &Elem) -> Result<TensorElem> {
        self.comodule().coaction(w)
    }

    /// The part of `Δ_A•(ω)` with a form leg in `H`; zero iff `ω` is horizontal.
    pub fn vertical_part(&self, w: &Elem) -> Result<TensorElem> {
        Ok(self.extended_coaction(w)?.filter_degrees(|d| d[1] > 0))
    }

    pub fn is_horizontal(&self, w: &Elem) -> Result<bool> {
        Ok(self.vertical_part(w)?.is_zero())
    }

    pub fn is_basic(&self, w: &Elem) -> Result<bool> {
        Ok(self.extended_coaction(w)? == TensorElem::pure(&[w, &Elem::one(self.structure())]))
    }

    /// `π_v(a⁰da¹∧…∧daⁿ) = a⁰₀…aⁿ₀ ⊗ S(a⁰₁…aⁿ₁)a⁰₂da¹₂∧…∧daⁿ₂`, read off the
    /// `(0,0,n)` component of `(id⊗Δ•)Δ_A•(ω)`.
    pub fn vertical_projection(&self, w: &Elem) -> Result<TensorElem> {
        let mut out = TensorElem::zero(&self.ah());
        let degrees: std::collections::BTreeSet<u32> =
            w.terms().keys().map(|m| self.total().form_degree(m)).collect();
        for n in degrees {
            let part = w.degree_part(n);
            let top = self.comodule().iterated_coaction(&part, 2)?.filter_degrees(|d| d[0] == 0 && d[1] == 0);
            let s = self.hopf().antipode_map().apply_at(&top, 1)?;
            out = &out + &s.contract(1)?;
        }
        Ok(out)
    }

    /// `(a⊗ϑ)∧(a'⊗ϑ') = aa'₀ ⊗ S(a'₁)ϑa'₂∧ϑ'` on `A⊗Λ•`.
    pub fn vertical_wedge(&self, x: &TensorElem, y: &TensorElem) -> Result<TensorElem> {
        let a = self.total();
        let h = self.structure();
        let mut out = TensorElem::zero(&self.ah());
        for (kx, cx) in x.terms() {
            let left = Elem::monomial(a, kx[0].clone());
            let theta = Elem::monomial(h, kx[1].clone());
            for (ky, cy) in y.terms() {
                let theta2 = Elem::monomial(h, ky[1].clone());
                let legs = self.comodule().iterated_coaction_monomial(&ky[0], 2)?;
                for (k, c) in legs.terms() {
                    let l = left.mul(&Elem::monomial(a, k[0].clone()))?;
                    let s = self.hopf().antipode(&Elem::monomial(h, k[1].clone()))?;
                    let r = s.mul(&theta)?.mul(&Elem::monomial(h, k[2].clone()))?.mul(&theta2)?;
                    out = &out + &TensorElem::pure(&[&l, &r]).scale(&(&(cx * cy) * c));
                }
            }
        }
        Ok(out)
    }

    /// `d(a⊗ϑ) = a⊗dϑ + a₀⊗ϖ(π_ε(a₁))∧ϑ`.
    pub fn vertical_d(&self, x: &TensorElem) -> Result<TensorElem> {
        let a = self.total();
        let h = self.structure();
        let mut out = TensorElem::zero(&self.ah());
        for (k, c) in x.terms() {
            let left = Elem::monomial(a, k[0].clone());
            let theta = Elem::monomial(h, k[1].clone());
            out = &out + &TensorElem::pure(&[&left, &theta.d()?]).scale(c);
            for (kk, cc) in self.extended_coaction(&left)?.terms() {
                let w = cartan_maurer(self.hopf(), &Elem::monomial(h, kk[1].clone()))?;
                let t = TensorElem::pure(&[&Elem::monomial(a, kk[0].clone()), &w.mul(&theta)?]);
                out = &out + &t.scale(&(c * cc));
            }
        }
        Ok(out)
    }

    /// `a⊗λ` for a left-invariant `λ`.
    pub fn vertical(&self, a: &Elem, lambda: &Elem) -> TensorElem {
        TensorElem::pure(&[a, lambda])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;

    fn calc(name: &str) -> (instances::InstanceBundle, BundleCalculus) {
        let b = instances::load(name).unwrap();
        let c = b.calculus().unwrap();
        (b, c)
    }

    #[test]
    fn torus_extended_coaction() {
        let (b, c) = calc("torus");
        let du = b.eval("d(u)").unwrap();
        let want = b.galois.comodule().coaction(&du).unwrap();
        let t = b.eval_structure("t").unwrap();
        let dt = b.eval_structure("d(t)").unwrap();
        let u = b.eval("u").unwrap();
        let expected = &TensorElem::pure(&[&du, &t]) + &TensorElem::pure(&[&u, &dt]);
        assert_eq!(want, expected);
        assert!(!c.is_horizontal(&du).unwrap());
        let basic = b.eval("u*v*d(v^-1*u^-1)").unwrap();
        assert!(c.is_basic(&basic).unwrap());
        assert!(basic.d().unwrap().is_zero());
    }

    #[test]
    fn torus_vertical_projection() {
        let (b, c) = calc("torus");
        let u = b.eval("u").unwrap();
        let mc = b.eval_structure("t^-1*d(t)").unwrap();
        assert_eq!(c.vertical_projection(&b.eval("d(u)").unwrap()).unwrap(), c.vertical(&u, &mc));
        let s = b.eval("u^-1*d(u) + u^2*v^2*d(u^-1*v^-1)").unwrap();
        let one = Elem::one(b.total());
        assert_eq!(c.vertical_projection(&s).unwrap(), c.vertical(&one, &mc));
        let db = b.eval("d(u*v)").unwrap();
        assert!(c.vertical_projection(&db).unwrap().is_zero());
    }

    #[test]
    fn torus_vertical_calculus() {
        let (b, c) = calc("torus");
        let u = b.eval("u").unwrap();
        let one_h = Elem::one(b.structure_pres());
        let mc = b.eval_structure("t^-1*d(t)").unwrap();
        assert_eq!(c.vertical_d(&c.vertical(&u, &one_h)).unwrap(), c.vertical(&u, &mc));
        let one = Elem::one(b.total());
        assert!(c.vertical_d(&c.vertical(&one, &mc)).unwrap().is_zero());
    }

    #[test]
    fn suq2_extended_coaction() {
        let (b, _) = calc("su_q2");
        let e0 = b.eval("e0").unwrap();
        let want = &TensorElem::pure(&[&e0, &Elem::one(b.structure_pres())])
            + &TensorElem::pure(&[&Elem::one(b.total()), &b.eval_structure("t^-1*d(t)").unwrap()]);
        assert_eq!(b.galois.comodule().coaction(&e0).unwrap(), want);
    }
}
