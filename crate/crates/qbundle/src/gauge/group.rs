//! Gauge transformations `H → A`, vertical automorphisms `A → A`, and the
//! isomorphism `θ(f)(a) = a₀f(a₁)` between them.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::check::{CheckOutcome, Tally};
use crate::cli::expr::{self, Value};
use crate::error::{Error, Result};
use crate::hopf::{GaloisExtension, HopfStructure};
use crate::instances::InstanceBundle;
use crate::ncalg::{BasisRuleMap, Elem, ExtensionMode, MonomialWindow, Presentation, TensorElem};

use super::exact::ExactForms;

/// A unital, convolution invertible, `Ad`-colinear map `f: H → A`.
#[derive(Clone, Debug)]
pub struct GaugeTransformation {
    pub name: String,
    galois: Arc<GaloisExtension>,
    f: BasisRuleMap,
    inv: BasisRuleMap,
}

fn linear_map<F>(name: &str, domain: &Arc<Presentation>, target: &Arc<Presentation>, f: F) -> BasisRuleMap
where
    F: Fn(&Elem) -> Result<Elem> + Send + Sync + 'static,
{
    let d = domain.clone();
    BasisRuleMap::generated(name, domain, &[target.clone()], ExtensionMode::Linear, move |m| {
        Ok(Some(TensorElem::from_elem(&f(&Elem::monomial(&d, m.clone()))?)))
    })
}

/// Degree-0 monomials of `H` in the window.
pub fn structure_window(hopf: &HopfStructure, window: &MonomialWindow) -> Result<Vec<Elem>> {
    let h = hopf.pres();
    Ok(window.enumerate_degree(h, 0)?.into_iter().map(|m| Elem::monomial(h, m)).collect())
}

/// Degree-0 monomials of `A` in the window.
pub fn total_window(a: &Arc<Presentation>, window: &MonomialWindow) -> Result<Vec<Elem>> {
    Ok(window.enumerate_degree(a, 0)?.into_iter().map(|m| Elem::monomial(a, m)).collect())
}

/// `Ad(h) = h₂⊗S(h₁)h₃`.
pub fn adjoint(hopf: &HopfStructure, h: &Elem) -> Result<TensorElem> {
    let p = hopf.pres();
    let mut out = TensorElem::zero(&[p.clone(), p.clone()]);
    for (k, c) in hopf.iterated_coproduct(h, 3)?.terms() {
        let s = hopf.antipode(&Elem::monomial(p, k[0].clone()))?;
        let right = s.mul(&Elem::monomial(p, k[2].clone()))?;
        out = &out + &TensorElem::pure(&[&Elem::monomial(p, k[1].clone()), &right]).scale(c);
    }
    Ok(out)
}

impl GaugeTransformation {
    /// Unchecked; see [`make_gauge`].
    pub fn new(name: &str, galois: &Arc<GaloisExtension>, f: BasisRuleMap, inv: BasisRuleMap) -> Self {
        GaugeTransformation { name: name.into(), galois: galois.clone(), f, inv }
    }

    /// `h ↦ ε(h)1`.
    pub fn unit(galois: &Arc<GaloisExtension>) -> Self {
        let hopf = galois.comodule().hopf().clone();
        let a = galois.total().clone();
        let (h2, a2) = (hopf.clone(), a.clone());
        let f = linear_map("unit", hopf.pres(), &a, move |h| Ok(Elem::scalar(&a2, h2.counit(h)?)));
        GaugeTransformation::new("unit", galois, f.clone(), f)
    }

    pub fn galois(&self) -> &Arc<GaloisExtension> {
        &self.galois
    }

    pub fn hopf(&self) -> &Arc<HopfStructure> {
        self.galois.comodule().hopf()
    }

    pub fn total(&self) -> &Arc<Presentation> {
        self.galois.total()
    }

    pub fn map(&self) -> &BasisRuleMap {
        &self.f
    }

    pub fn inverse_map(&self) -> &BasisRuleMap {
        &self.inv
    }

    pub fn eval(&self, h: &Elem) -> Result<Elem> {
        self.f.apply_elem(h)
    }

    pub fn eval_inverse(&self, h: &Elem) -> Result<Elem> {
        self.inv.apply_elem(h)
    }

    /// `f(1) = 1`, `Δ_A∘f = (f⊗id)∘Ad` and `f*f⁻¹ = f⁻¹*f = ε1` on the window.
    pub fn validate(&self, window: &MonomialWindow) -> Result<Vec<CheckOutcome>> {
        let hopf = self.hopf();
        let a = self.total();
        let comodule = self.galois.comodule();
        let mut unital = Tally::new("gauge-unital");
        let one = self.eval(&Elem::one(hopf.pres()));
        unital.record(matches!(&one, Ok(x) if *x == Elem::one(a)), || format!("f(1) = {one:?}"));
        let mut colinear = Tally::new("gauge-ad-colinear");
        let mut inverse = Tally::new("gauge-convolution-inverse");
        for h in structure_window(hopf, window)? {
            let lhs = comodule.coaction(&self.eval(&h)?)?;
            let rhs = self.f.apply_at(&adjoint(hopf, &h)?, 0)?;
            colinear.record(lhs == rhs, || format!("h = {h}: {lhs} vs {rhs}"));
            let unit = Elem::scalar(a, hopf.counit(&h)?);
            let fg = crate::hopf::convolve(hopf, &|x| self.eval(x), &|x| self.eval_inverse(x), &h)?;
            let gf = crate::hopf::convolve(hopf, &|x| self.eval_inverse(x), &|x| self.eval(x), &h)?;
            inverse.record(fg == unit && gf == unit, || format!("h = {h}: f*g = {fg}, g*f = {gf}"));
        }
        Ok(vec![unital.finish(), colinear.finish().windowed(), inverse.finish().windowed()])
    }
}

/// The convolution inverse on grouplike monomials, `f⁻¹(h) = f(h)⁻¹`.
fn solved_inverse(galois: &Arc<GaloisExtension>, f: &BasisRuleMap) -> BasisRuleMap {
    let hopf = galois.comodule().hopf().clone();
    let f = f.clone();
    let a = galois.total().clone();
    let name = format!("{}^-1", f.name());
    let hp = hopf.pres().clone();
    linear_map(&name, &hp, &a, move |h| {
        let d = hopf.coproduct(h)?;
        if d != TensorElem::pure(&[h, h]) {
            return Err(Error::NoSolution(format!("convolution inverse at non-grouplike {h}")));
        }
        f.apply_elem(h)?.inverse().map_err(|_| Error::NoSolution(format!("f({h}) is not invertible")))
    })
}

/// Validates `f` (with `f⁻¹` given, or solved on grouplikes) on the window;
/// every failed axiom is listed.
pub fn make_gauge(
    name: &str,
    galois: &Arc<GaloisExtension>,
    f: BasisRuleMap,
    inv: Option<BasisRuleMap>,
    window: &MonomialWindow,
) -> Result<GaugeTransformation> {
    let inv = inv.unwrap_or_else(|| solved_inverse(galois, &f));
    let g = GaugeTransformation::new(name, galois, f, inv);
    let failures: Vec<String> = g
        .validate(window)?
        .into_iter()
        .filter(|o| !o.ok())
        .map(|o| format!("{}: {}", o.check, o.witness.unwrap_or_default()))
        .collect();
    if failures.is_empty() {
        Ok(g)
    } else {
        Err(Error::Axiom(failures.join("; ")))
    }
}

/// `(f*g)(h) = f(h₁)g(h₂)`, with inverse `g⁻¹*f⁻¹`.
pub fn gauge_mul(f: &GaugeTransformation, g: &GaugeTransformation) -> GaugeTransformation {
    let hopf = f.hopf().clone();
    let a = f.total().clone();
    let conv = |x: BasisRuleMap, y: BasisRuleMap, name: String| {
        let hopf = hopf.clone();
        linear_map(&name, hopf.clone().pres(), &a, move |h| {
            crate::hopf::convolve(&hopf, &|e| x.apply_elem(e), &|e| y.apply_elem(e), h)
        })
    };
    let name = format!("{}*{}", f.name, g.name);
    let fg = conv(f.f.clone(), g.f.clone(), name.clone());
    let inv = conv(g.inv.clone(), f.inv.clone(), format!("({name})^-1"));
    GaugeTransformation::new(&name, &f.galois, fg, inv)
}

pub fn gauge_inv(f: &GaugeTransformation) -> GaugeTransformation {
    GaugeTransformation::new(&format!("{}^-1", f.name), &f.galois, f.inv.clone(), f.f.clone())
}

/// Instantiates a registered `gauge name(params) : t => … ; t^-1 => …`
/// template; the letter images extend multiplicatively along monomials of `H`.
pub fn gauge_from_template(bundle: &InstanceBundle, name: &str, args: &[i64]) -> Result<GaugeTransformation> {
    let t = bundle.gauge_template(name)?;
    if t.params.len() != args.len() {
        return Err(Error::Other(format!("gauge `{name}` takes {} parameters", t.params.len())));
    }
    let mut scope = bundle.scope();
    for (p, v) in t.params.iter().zip(args) {
        scope = scope.with_var(p, *v);
    }
    let h = bundle.structure_pres();
    let a = bundle.total();
    let mut rules = BTreeMap::new();
    for (lhs, rhs) in &t.rules {
        let key = expr::eval_elem(lhs, h)?;
        let m = match key.terms().iter().next() {
            Some((m, c)) if key.len() == 1 && c.is_one() && m.total_letters() == 1 => m.clone(),
            _ => return Err(Error::Other(format!("gauge rule `{lhs}` must be a single letter"))),
        };
        let img = match expr::eval(&expr::parse(rhs)?, &scope)? {
            Value::Scalar(s) => Elem::scalar(a, s),
            v => v.into_elem(a)?,
        };
        rules.insert(m, TensorElem::from_elem(&img));
    }
    let label = if args.is_empty() {
        name.to_string()
    } else {
        format!("{name}({})", args.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
    };
    let f = BasisRuleMap::table(&label, h, &[a.clone()], ExtensionMode::AlgebraMorphism, rules);
    make_gauge(&label, &bundle.galois, f, None, &bundle.window)
}

/// A left `B`-linear, unital, right `H`-colinear bijection `A → A`.
#[derive(Clone, Debug)]
pub struct VerticalAutomorphism {
    pub name: String,
    galois: Arc<GaloisExtension>,
    map: BasisRuleMap,
    inv: BasisRuleMap,
}

impl VerticalAutomorphism {
    pub fn new(name: &str, galois: &Arc<GaloisExtension>, map: BasisRuleMap, inv: BasisRuleMap) -> Self {
        VerticalAutomorphism { name: name.into(), galois: galois.clone(), map, inv }
    }

    pub fn identity(galois: &Arc<GaloisExtension>) -> Self {
        let id = BasisRuleMap::identity(galois.total());
        VerticalAutomorphism::new("id", galois, id.clone(), id)
    }

    pub fn apply(&self, a: &Elem) -> Result<Elem> {
        self.map.apply_elem(a)
    }

    pub fn apply_inverse(&self, a: &Elem) -> Result<Elem> {
        self.inv.apply_elem(a)
    }

    pub fn map(&self) -> &BasisRuleMap {
        &self.map
    }

    pub fn inverse(&self) -> VerticalAutomorphism {
        VerticalAutomorphism::new(&format!("{}^-1", self.name), &self.galois, self.inv.clone(), self.map.clone())
    }

    /// `G∘F`, the group product `F·G`.
    pub fn then(&self, g: &VerticalAutomorphism) -> VerticalAutomorphism {
        let a = self.galois.total();
        let compose = |first: BasisRuleMap, second: BasisRuleMap, name: String| {
            linear_map(&name, a, a, move |x| second.apply_elem(&first.apply_elem(x)?))
        };
        let name = format!("{}.{}", self.name, g.name);
        let map = compose(self.map.clone(), g.map.clone(), name.clone());
        let inv = compose(g.inv.clone(), self.inv.clone(), format!("({name})^-1"));
        VerticalAutomorphism::new(&name, &self.galois, map, inv)
    }

    /// The extension `a₀da₁∧… ↦ F(a₀)dF(a₁)∧…` to all forms.
    pub fn dga_extension(&self, exact: &ExactForms) -> VerticalAutomorphism {
        let a = self.galois.total().clone();
        let ext = |f: BasisRuleMap, name: String| {
            let (ex, a2) = (exact.clone(), a.clone());
            linear_map(&name, &a, &a, move |w| {
                if w.form_degree() == Some(0) {
                    return f.apply_elem(w);
                }
                ex.extend(w, &a2, |x| f.apply_elem(x))
            })
        };
        let name = format!("{}~", self.name);
        VerticalAutomorphism::new(&name, &self.galois, ext(self.map.clone(), name.clone()), ext(self.inv.clone(), name.clone()))
    }

    /// Unital, left `B`-linear, colinear and inverse to `F⁻¹`, on degree-0 window monomials.
    pub fn validate(&self, window: &MonomialWindow) -> Result<Vec<CheckOutcome>> {
        let a = self.galois.total();
        let comodule = self.galois.comodule();
        let basis = total_window(a, window)?;
        let bs = comodule.coinvariant_basis(&MonomialWindow::new(2))?;
        let mut unital = Tally::new("vertical-unital");
        let one = Elem::one(a);
        let f1 = self.apply(&one)?;
        unital.record(f1 == one, || format!("F(1) = {f1}"));
        let mut linear = Tally::new("vertical-left-b-linear");
        let mut colinear = Tally::new("vertical-colinear");
        let mut bij = Tally::new("vertical-bijective");
        for x in &basis {
            let lhs = comodule.coaction(&self.apply(x)?)?;
            let rhs = self.map.apply_at(&comodule.coaction(x)?, 0)?;
            colinear.record(lhs == rhs, || format!("a = {x}: {lhs} vs {rhs}"));
            let back = self.apply_inverse(&self.apply(x)?)?;
            let fwd = self.apply(&self.apply_inverse(x)?)?;
            bij.record(back == *x && fwd == *x, || format!("a = {x}: F^-1(F(a)) = {back}, F(F^-1(a)) = {fwd}"));
            for b in bs.iter().take(6) {
                let lhs = self.apply(&b.mul(x)?)?;
                let rhs = b.mul(&self.apply(x)?)?;
                linear.record(lhs == rhs, || format!("F({b} * {x}) = {lhs} vs {rhs}"));
            }
        }
        Ok(vec![unital.finish(), linear.finish().windowed(), colinear.finish().windowed(), bij.finish().windowed()])
    }

    /// `F(xy) = F(x)F(y)` and `F(dx) = dF(x)` on window pairs; decides
    /// whether curvature equivariance is asserted for this automorphism.
    pub fn dga_morphism_check(&self, window: &MonomialWindow) -> Result<CheckOutcome> {
        let basis = window.enumerate(self.galois.total())?;
        let elems: Vec<Elem> = basis.into_iter().map(|m| Elem::monomial(self.galois.total(), m)).collect();
        let mut t = Tally::new("vertical-dga-morphism");
        for x in elems.iter().take(25) {
            let lhs = self.apply(&x.d()?)?;
            let rhs = self.apply(x)?.d()?;
            t.record(lhs == rhs, || format!("F(d({x})) = {lhs} vs d(F({x})) = {rhs}"));
            for y in elems.iter().take(25) {
                let lhs = self.apply(&x.mul(y)?)?;
                let rhs = self.apply(x)?.mul(&self.apply(y)?)?;
                t.record(lhs == rhs, || format!("F({x} * {y}) = {lhs} vs {rhs}"));
            }
        }
        Ok(t.finish().windowed())
    }
}

/// `θ(f) = F_f`, `F_f(a) = a₀f(a₁)`, with inverse `a ↦ a₀f⁻¹(a₁)`.
pub fn to_vertical(f: &GaugeTransformation) -> VerticalAutomorphism {
    let galois = f.galois.clone();
    let a = galois.total().clone();
    let make = |g: BasisRuleMap, name: String| {
        let co = galois.comodule().coaction_map().clone();
        linear_map(&name, &a, &a, move |x| g.apply_at(&co.apply(x)?, 1)?.multiply_out())
    };
    let name = format!("theta({})", f.name);
    VerticalAutomorphism::new(&name, &galois, make(f.f.clone(), name.clone()), make(f.inv.clone(), name.clone()))
}

/// `θ⁻¹(F) = f_F`, `f_F(h) = h⟨1⟩F(h⟨2⟩)`, with inverse `h ↦ h⟨1⟩F⁻¹(h⟨2⟩)`.
pub fn from_vertical(big_f: &VerticalAutomorphism) -> GaugeTransformation {
    let galois = big_f.galois.clone();
    let a = galois.total().clone();
    let hp = galois.structure().clone();
    let make = |g: BasisRuleMap, name: String| {
        let gal = galois.clone();
        linear_map(&name, &hp, &a, move |h| g.apply_at(&gal.translation(h)?, 1)?.multiply_out())
    };
    let name = format!("theta^-1({})", big_f.name);
    GaugeTransformation::new(&name, &galois, make(big_f.map.clone(), name.clone()), make(big_f.inv.clone(), name.clone()))
}

/// `θ⁻¹(θ(f)) = f` on `H`-window monomials, `θ(θ⁻¹(θ(f))) = θ(f)` on
/// `A`-window monomials, and `θ(f*g) = θ(g)∘θ(f)` for every ordered pair.
pub fn theta_round_trip_check(
    gauges: &[GaugeTransformation],
    window: &MonomialWindow,
) -> Result<Vec<CheckOutcome>> {
    let mut back = Tally::new("theta-inverse-after-theta");
    let mut fwd = Tally::new("theta-after-theta-inverse");
    let mut hom = Tally::new("theta-antihomomorphism");
    for f in gauges {
        let big = to_vertical(f);
        let again = from_vertical(&big);
        for h in structure_window(f.hopf(), window)? {
            let (x, y) = (again.eval(&h)?, f.eval(&h)?);
            back.record(x == y, || format!("{}: h = {h}: {x} vs {y}", f.name));
        }
        let big2 = to_vertical(&again);
        for a in total_window(f.total(), window)? {
            let (x, y) = (big2.apply(&a)?, big.apply(&a)?);
            fwd.record(x == y, || format!("{}: a = {a}: {x} vs {y}", f.name));
        }
        for g in gauges {
            let lhs = to_vertical(&gauge_mul(f, g));
            let rhs = to_vertical(f).then(&to_vertical(g));
            for a in total_window(f.total(), window)? {
                let (x, y) = (lhs.apply(&a)?, rhs.apply(&a)?);
                hom.record(x == y, || format!("theta({}*{})({a}) = {x} vs {y}", f.name, g.name));
            }
        }
    }
    Ok(vec![back.finish().windowed(), fwd.finish().windowed(), hom.finish().windowed()])
}
