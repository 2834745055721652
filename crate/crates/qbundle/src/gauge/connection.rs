//! Connection 1-forms `s: Λ¹ → Ω¹(A)`, the connections `Π` they induce,
//! covariant derivatives on associated bundles, curvature, and the action
//! of vertical automorphisms on connections.

use std::sync::Arc;

use crate::check::{CheckOutcome, Tally};
use crate::cli::expr;
use crate::dga::{cartan_maurer, invariant_coordinates};
use crate::error::{Error, Result};
use crate::instances::InstanceBundle;
use crate::ncalg::linsolve::{tensor_vec, SparseVec};
use crate::ncalg::{Echelon, Elem, Monomial, MonomialWindow, Scalar, TensorElem, TensorKey};
use crate::qpb::checks::{combine, elem_vec, kernel};
use crate::qpb::BundleCalculus;

use super::exact::ExactForms;
use super::group::{structure_window, total_window, VerticalAutomorphism};

/// Images `s(λᵢ)` of the basis `λᵢ` of `Λ¹`.
#[derive(Clone, Debug)]
pub struct ConnectionForm {
    pub name: String,
    calc: BundleCalculus,
    images: Vec<Elem>,
}

impl ConnectionForm {
    /// Unchecked; see [`make_connection_form`].
    pub fn new(name: &str, calc: &BundleCalculus, images: Vec<Elem>) -> Result<Self> {
        if images.len() != calc.lambda().len() {
            return Err(Error::Other(format!("{} images for {} basis forms", images.len(), calc.lambda().len())));
        }
        for x in &images {
            if !Arc::ptr_eq(x.pres(), calc.total()) || !matches!(x.form_degree(), Some(1)) && !x.is_zero() {
                return Err(Error::Other(format!("{x} is not a 1-form on the total space")));
            }
        }
        Ok(ConnectionForm { name: name.into(), calc: calc.clone(), images })
    }

    pub fn calculus(&self) -> &BundleCalculus {
        &self.calc
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    /// `s(ϑ)` for `ϑ ∈ Λ¹`.
    pub fn apply(&self, theta: &Elem) -> Result<Elem> {
        let coords = invariant_coordinates(theta, self.calc.lambda())?;
        let mut out = Elem::zero(self.calc.total());
        for (c, img) in coords.iter().zip(&self.images) {
            out = &out + &img.scale(c);
        }
        Ok(out)
    }

    /// `s(ϖ(π_ε(h)))`.
    pub fn of(&self, h: &Elem) -> Result<Elem> {
        let hopf = self.calc.hopf();
        self.apply(&cartan_maurer(hopf, &hopf.pi_eps(h)?)?)
    }

    /// `π_v(s(ϑ)) = 1⊗ϑ` on the basis, and colinearity
    /// `Δ(s(ϖ(h))) = s(ϖ(π_ε(h₂)))⊗S(h₁)h₃` for `h = π_ε(m)`, `m` in the window.
    pub fn check(&self, window: &MonomialWindow) -> Result<Vec<CheckOutcome>> {
        let calc = &self.calc;
        let hopf = calc.hopf();
        let hp = calc.structure();
        let one = Elem::one(calc.total());
        let mut vertical = Tally::new("connection-vertical");
        for (l, img) in calc.lambda().iter().zip(&self.images) {
            let got = calc.vertical_projection(img)?;
            let want = calc.vertical(&one, l);
            vertical.record(got == want, || format!("pi_v(s({l})) = {got}"));
        }
        let mut colinear = Tally::new("connection-colinear");
        for m in structure_window(hopf, window)? {
            let h = hopf.pi_eps(&m)?;
            let lhs = calc.extended_coaction(&self.of(&h)?)?.filter_degrees(|d| d == [1, 0]);
            let mut rhs = TensorElem::zero(&[calc.total().clone(), hp.clone()]);
            for (k, c) in hopf.iterated_coproduct(&h, 3)?.terms() {
                let legs: Vec<Elem> = k.iter().map(|x| Elem::monomial(hp, x.clone())).collect();
                let right = hopf.antipode(&legs[0])?.mul(&legs[2])?;
                rhs = &rhs + &TensorElem::pure(&[&self.of(&legs[1])?, &right]).scale(c);
            }
            colinear.record(lhs == rhs, || format!("h = {h}: {lhs} vs {rhs}"));
        }
        Ok(vec![vertical.finish(), colinear.finish().windowed()])
    }
}

/// A connection form whose axioms hold on the window; failures are itemized.
pub fn make_connection_form(
    name: &str,
    calc: &BundleCalculus,
    images: Vec<Elem>,
    window: &MonomialWindow,
) -> Result<ConnectionForm> {
    let s = ConnectionForm::new(name, calc, images)?;
    let failures: Vec<String> = s
        .check(window)?
        .into_iter()
        .filter(|o| !o.ok())
        .map(|o| format!("{}: {}", o.check, o.witness.unwrap_or_default()))
        .collect();
    if failures.is_empty() {
        Ok(s)
    } else {
        Err(Error::Axiom(failures.join("; ")))
    }
}

/// `t·s + (1-t)·s'` for a rational `t`.
pub fn convex_combine(s: &ConnectionForm, s2: &ConnectionForm, t: &Scalar) -> Result<ConnectionForm> {
    if t.as_rational().is_none() {
        return Err(Error::Other(format!("convex weight {t} is not rational")));
    }
    let u = &Scalar::one() - t;
    let images = s.images.iter().zip(&s2.images).map(|(x, y)| &x.scale(t) + &y.scale(&u)).collect();
    ConnectionForm::new(&format!("{t}*{} + {u}*{}", s.name, s2.name), &s.calc, images)
}

/// The images of a registered `connection name(params) : ϑ => expr` template,
/// without validation.
pub fn connection_from_template(bundle: &InstanceBundle, name: &str, args: &[i64]) -> Result<ConnectionForm> {
    let t = bundle.connection_template(name)?;
    if t.params.len() != args.len() {
        return Err(Error::Other(format!("connection `{name}` takes {} parameters", t.params.len())));
    }
    let calc = bundle.calculus()?;
    let mut scope = bundle.scope();
    for (p, v) in t.params.iter().zip(args) {
        scope = scope.with_var(p, *v);
    }
    let mut images: Vec<Option<Elem>> = vec![None; calc.lambda().len()];
    for (lhs, rhs) in &t.rules {
        let theta = expr::eval_elem(lhs, bundle.structure_pres())?;
        let coords = invariant_coordinates(&theta, calc.lambda())?;
        let nonzero: Vec<usize> = (0..coords.len()).filter(|&i| !coords[i].is_zero()).collect();
        let [i] = nonzero[..] else {
            return Err(Error::Other(format!("connection rule `{lhs}` must be a multiple of one basis form")));
        };
        let c = coords[i].inverse().ok_or_else(|| Error::NotInvertible(coords[i].to_string()))?;
        let img = expr::eval(&expr::parse(rhs)?, &scope)?.into_elem(bundle.total())?;
        images[i] = Some(img.scale(&c));
    }
    let images = images
        .into_iter()
        .zip(calc.lambda())
        .map(|(x, l)| x.ok_or_else(|| Error::Other(format!("connection `{name}` has no rule for {l}"))))
        .collect::<Result<Vec<_>>>()?;
    let label = if args.is_empty() {
        name.to_string()
    } else {
        format!("{name}({})", args.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
    };
    ConnectionForm::new(&label, &calc, images)
}

/// `Π(a da') = aa'₀ s(ϖ(π_ε(a'₁)))` on `Ω¹(A)`.
#[derive(Clone, Debug)]
pub struct Connection {
    pub form: ConnectionForm,
    exact: ExactForms,
}

/// The connection of a connection 1-form.
pub fn connection_from_form(s: &ConnectionForm, exact: &ExactForms) -> Connection {
    Connection { form: s.clone(), exact: exact.clone() }
}

impl Connection {
    fn calc(&self) -> &BundleCalculus {
        &self.form.calc
    }

    pub fn project(&self, w: &Elem) -> Result<Elem> {
        let calc = self.calc();
        let mut out = Elem::zero(calc.total());
        for chain in self.exact.decompose(w)? {
            let [a, b] = &chain[..] else {
                return Err(Error::Other(format!("{w} is not a 1-form")));
            };
            for (k, c) in calc.extended_coaction(b)?.terms() {
                let x = Elem::monomial(calc.total(), k[0].clone());
                let h = Elem::monomial(calc.structure(), k[1].clone());
                out = &out + &a.mul(&x)?.mul(&self.form.of(&h)?)?.scale(c);
            }
        }
        Ok(out)
    }

    /// `Π² = Π`, `ker Π = hor¹`, left `A`-linearity and `H`-colinearity on window 1-forms.
    pub fn check(&self, window: &MonomialWindow) -> Result<Vec<CheckOutcome>> {
        let calc = self.calc();
        let a = calc.total();
        let ones: Vec<Elem> = window
            .clone()
            .with_forms(1)
            .enumerate_degree(a, 1)?
            .into_iter()
            .map(|m| Elem::monomial(a, m))
            .collect();
        let images: Vec<Elem> = ones.iter().map(|w| self.project(w)).collect::<Result<_>>()?;
        let mut idem = Tally::new("projection-idempotent");
        let mut ker = Tally::new("projection-kernel-horizontal");
        let mut colinear = Tally::new("projection-colinear");
        let mut linear = Tally::new("projection-left-linear");
        let scalars = total_window(a, &MonomialWindow::new(1))?;
        for (w, p) in ones.iter().zip(&images) {
            let pp = self.project(p)?;
            idem.record(pp == *p, || format!("Pi(Pi({w})) = {pp} vs {p}"));
            let rest = w - p;
            ker.record(calc.is_horizontal(&rest)?, || format!("{w} - Pi({w}) = {rest} is not horizontal"));
            let lhs = calc.extended_coaction(p)?.filter_degrees(|d| d == [1, 0]);
            let co = calc.extended_coaction(w)?.filter_degrees(|d| d == [1, 0]);
            let mut rhs = TensorElem::zero(co.factors());
            for (k, c) in co.terms() {
                let x = self.project(&Elem::monomial(a, k[0].clone()))?;
                rhs = &rhs + &TensorElem::pure(&[&x, &Elem::monomial(calc.structure(), k[1].clone())]).scale(c);
            }
            colinear.record(lhs == rhs, || format!("w = {w}: {lhs} vs {rhs}"));
            for x in &scalars {
                let lhs = self.project(&x.mul(w)?)?;
                let rhs = x.mul(p)?;
                linear.record(lhs == rhs, || format!("Pi({x} * {w}) = {lhs} vs {rhs}"));
            }
        }
        let ver: Vec<SparseVec<TensorKey>> =
            ones.iter().map(|w| calc.vertical_part(w).map(|t| tensor_vec(&t))).collect::<Result<_>>()?;
        let pvecs: Vec<SparseVec<Monomial>> = images.iter().map(elem_vec).collect();
        for k in kernel(&ver) {
            ker.record(combine(&k, &pvecs).is_empty(), || "a horizontal window form has Pi != 0".into());
        }
        Ok(vec![idem.finish().windowed(), ker.finish().windowed(), linear.finish().windowed(), colinear.finish().windowed()])
    }
}

/// `(id-Π)(da) ∈ Ω¹(B)A` for window functions `a`, tested against the span
/// of `b·db'·x` with `b, b'` coinvariant and `x` in a wider window.
pub fn is_strong<P>(project: P, calc: &BundleCalculus, window: &MonomialWindow) -> Result<CheckOutcome>
where
    P: Fn(&Elem) -> Result<Elem>,
{
    let a = calc.total();
    let bs = calc.comodule().coinvariant_basis(&MonomialWindow::new(window.bound.max(1)))?;
    let rights = total_window(a, &MonomialWindow::new(window.bound + 1))?;
    let mut span = Echelon::new();
    for b in &bs {
        for b2 in &bs {
            let x = b.mul(&b2.d()?)?;
            if x.is_zero() {
                continue;
            }
            for r in &rights {
                let y = x.mul(r)?;
                if !y.is_zero() {
                    span.insert(elem_vec(&y));
                }
            }
        }
    }
    let mut t = Tally::new("connection-strong");
    for x in total_window(a, window)? {
        let dx = x.d()?;
        let rest = &dx - &project(&dx)?;
        t.record(span.contains(&elem_vec(&rest)), || format!("(id - Pi)(d({x})) = {rest} is not in Omega^1(B)A"));
    }
    Ok(t.finish().windowed())
}

/// An element `Σ aⱼ⊗vⱼ` of `(A⊗V)^{coH}`, `V` spanned by `vⱼ ↦ vⱼ⊗t^{wⱼ}`.
#[derive(Clone, Debug)]
pub struct AssociatedElement {
    pub weights: Vec<i32>,
    pub parts: Vec<Elem>,
}

fn grouplike_name(calc: &BundleCalculus) -> Result<String> {
    let h = calc.structure();
    h.algebra_gens()
        .find(|&g| h.gen(g).invertible)
        .map(|g| h.gen(g).name.clone())
        .ok_or_else(|| Error::Other("the structure algebra has no grouplike generator".into()))
}

impl AssociatedElement {
    pub fn new(calc: &BundleCalculus, weights: Vec<i32>, parts: Vec<Elem>) -> Result<Self> {
        if weights.len() != parts.len() {
            return Err(Error::Other("one component per basis vector of V".into()));
        }
        let t = grouplike_name(calc)?;
        let one_h = Elem::one(calc.structure());
        for (w, a) in weights.iter().zip(&parts) {
            let g = calc.hopf().grouplike(&t, *w)?;
            let co = calc.extended_coaction(a)?.mul(&TensorElem::pure(&[&Elem::one(calc.total()), &g]))?;
            if co != TensorElem::pure(&[a, &one_h]) {
                return Err(Error::Axiom(format!("{a} (x) v[{w}] is not coinvariant")));
            }
        }
        Ok(AssociatedElement { weights, parts })
    }

    /// `b·e` for `b ∈ B`.
    pub fn left_mul(&self, b: &Elem) -> Result<Self> {
        let parts = self.parts.iter().map(|a| b.mul(a)).collect::<Result<_>>()?;
        Ok(AssociatedElement { weights: self.weights.clone(), parts })
    }
}

/// `∇(a⊗v) = (id-Π)(da)⊗v`, componentwise.
pub fn covariant_derivative(conn: &Connection, e: &AssociatedElement) -> Result<Vec<Elem>> {
    e.parts
        .iter()
        .map(|a| {
            let da = a.d()?;
            Ok(&da - &conn.project(&da)?)
        })
        .collect()
}

/// `∇(b·e) = db·e + b·∇e` for window coinvariants `b`.
pub fn covariant_leibniz_check(conn: &Connection, e: &AssociatedElement, bs: &[Elem]) -> Result<CheckOutcome> {
    let mut t = Tally::new("covariant-derivative-leibniz");
    let base = covariant_derivative(conn, e)?;
    for b in bs {
        let lhs = covariant_derivative(conn, &e.left_mul(b)?)?;
        let db = b.d()?;
        for ((l, a), n) in lhs.iter().zip(&e.parts).zip(&base) {
            let rhs = &db.mul(a)? + &b.mul(n)?;
            t.record(*l == rhs, || format!("b = {b}: {l} vs {rhs}"));
        }
    }
    Ok(t.finish().windowed())
}

/// `R_s(h) = ds(ϖ(h)) + s(ϖ(π_ε(h₁)))∧s(ϖ(π_ε(h₂)))`, with `h` first projected to `H⁺`.
pub fn curvature_form(s: &ConnectionForm, h: &Elem) -> Result<Elem> {
    let hopf = s.calc.hopf();
    let hp = s.calc.structure();
    let h = hopf.pi_eps(h)?;
    let mut out = s.of(&h)?.d()?;
    for (k, c) in hopf.coproduct(&h)?.terms() {
        let x = s.of(&Elem::monomial(hp, k[0].clone()))?;
        let y = s.of(&Elem::monomial(hp, k[1].clone()))?;
        out = &out + &x.mul(&y)?.scale(c);
    }
    Ok(out)
}

/// `R_∇(a⊗v) = -a₀R_s(π_ε(a₁))⊗v`, componentwise.
pub fn curvature_nabla(s: &ConnectionForm, e: &AssociatedElement) -> Result<Vec<Elem>> {
    let a = s.calc.total();
    let mut out = Vec::new();
    for x in &e.parts {
        let mut acc = Elem::zero(a);
        for (k, c) in s.calc.extended_coaction(x)?.terms() {
            let left = Elem::monomial(a, k[0].clone());
            let r = curvature_form(s, &Elem::monomial(s.calc.structure(), k[1].clone()))?;
            acc = &acc - &left.mul(&r)?.scale(c);
        }
        out.push(acc);
    }
    Ok(out)
}

/// `F ▷ s = F∘s`.
pub fn gauge_act(f: &VerticalAutomorphism, s: &ConnectionForm) -> Result<ConnectionForm> {
    let images = s.images.iter().map(|x| f.apply(x)).collect::<Result<_>>()?;
    ConnectionForm::new(&format!("{} |> {}", f.name, s.name), &s.calc, images)
}

/// `F(R_s(h)) = R_{F▷s}(h)` for `h` in the structure window.
pub fn curvature_equivariance_check(
    f: &VerticalAutomorphism,
    s: &ConnectionForm,
    window: &MonomialWindow,
) -> Result<CheckOutcome> {
    let moved = gauge_act(f, s)?;
    let mut t = Tally::new("curvature-equivariant");
    for h in structure_window(s.calc.hopf(), window)? {
        let lhs = f.apply(&curvature_form(s, &h)?)?;
        let rhs = curvature_form(&moved, &h)?;
        t.record(lhs == rhs, || format!("h = {h}: F(R_s) = {lhs} vs {rhs}"));
    }
    Ok(t.finish().windowed())
}

/// `R_s(π_ε(h)) = 0` on the structure window.
pub fn flatness_check(s: &ConnectionForm, window: &MonomialWindow) -> Result<CheckOutcome> {
    let mut t = Tally::new("connection-flat");
    for h in structure_window(s.calc.hopf(), window)? {
        let r = curvature_form(s, &h)?;
        t.record(r.is_zero(), || format!("R_{}({h}) = {r}", s.name));
    }
    Ok(t.finish().windowed())
}
