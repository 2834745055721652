//! Named verification suites and the line-delimited report records they produce.

use serde::Serialize;

use crate::check::{CheckOutcome, Status};
use crate::dga;
use crate::error::{Error, Result};
use crate::gauge::{self, ExactForms, GaugeTransformation, GradedGauge};
use crate::hopf;
use crate::instances::InstanceBundle;
use crate::ncalg::{Elem, Monomial, MonomialWindow};
use crate::qpb::{self, BundleCalculus};

pub const SUITES: &[&str] = &[
    "hopf-axioms",
    "graded-hopf",
    "coaction",
    "dga",
    "translation-identities",
    "braiding",
    "graded-braiding",
    "completeness",
    "atiyah",
    "vertical-calculus",
    "connections",
    "gauge",
    "module-action",
    "smash-braiding",
];

/// One line of a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    pub suite: String,
    pub instance: String,
    pub window: u32,
    pub check: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Record {
    pub fn ok(&self) -> bool {
        self.status.ok()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

/// Suites that make sense for the instance (`module-action` and `smash-braiding` need a smash product).
pub fn applicable(bundle: &InstanceBundle, suite: &str) -> bool {
    match suite {
        "module-action" | "smash-braiding" => bundle.action.is_some(),
        _ => SUITES.contains(&suite),
    }
}

/// The instance window with its bound replaced by `bound`, if given.
pub fn window_for(bundle: &InstanceBundle, bound: Option<u32>) -> MonomialWindow {
    let mut w = bundle.window.clone();
    if let Some(b) = bound {
        w.bound = b;
        w.bounds.clear();
    }
    w
}

/// Runs the named suites (or all applicable ones for `all`) in order.
/// Errors inside a suite become a single failing record.
pub fn run(bundle: &InstanceBundle, suite: &str, bound: Option<u32>) -> Result<Vec<Record>> {
    let names: Vec<&str> = if suite == "all" {
        SUITES.iter().copied().filter(|s| applicable(bundle, s)).collect()
    } else if applicable(bundle, suite) {
        vec![suite]
    } else if SUITES.contains(&suite) {
        return Err(Error::Other(format!("suite `{suite}` does not apply to `{}`", bundle.name)));
    } else {
        return Err(Error::Other(format!("unknown suite `{suite}`; known: {}", SUITES.join(", "))));
    };
    let window = window_for(bundle, bound);
    let mut out = Vec::new();
    for name in names {
        let outcomes = run_suite(bundle, name, &window).unwrap_or_else(|e| vec![CheckOutcome::fail("suite-error", e.to_string())]);
        out.extend(outcomes.into_iter().map(|o| Record {
            suite: name.into(),
            instance: bundle.name.clone(),
            window: window.bound,
            check: o.check,
            status: o.status,
            witness: o.witness,
        }));
    }
    Ok(out)
}

fn small(window: &MonomialWindow, cap: u32) -> MonomialWindow {
    let mut w = window.clone();
    w.bound = w.bound.min(cap);
    w.bounds.clear();
    w
}

fn elems(pres: &std::sync::Arc<crate::ncalg::Presentation>, ms: Vec<Monomial>) -> Vec<Elem> {
    ms.into_iter().map(|m| Elem::monomial(pres, m)).collect()
}

fn form_cap(bundle: &InstanceBundle) -> u32 {
    bundle.total().cap().min(2)
}

pub fn run_suite(bundle: &InstanceBundle, suite: &str, window: &MonomialWindow) -> Result<Vec<CheckOutcome>> {
    let calc = || bundle.calculus();
    match suite {
        "hopf-axioms" => bundle.hopf().axiom_check(&MonomialWindow::new(window.bound).with_forms(1)),
        "graded-hopf" => {
            let mut out = dga::graded_hopf_check(bundle.hopf(), &small(window, 2).with_forms(1))?;
            out.push(dga::cartan_maurer_equation_check(bundle.hopf(), &MonomialWindow::new(window.bound))?);
            Ok(out)
        }
        "coaction" => bundle.comodule().axiom_check(&small(window, 2).with_forms(window.max_form_degree.min(1))),
        "dga" => {
            let mut out = dga::dga_axiom_check(bundle.total(), &small(window, 1).with_forms(form_cap(bundle)))?;
            out.extend(dga::dga_axiom_check(bundle.structure_pres(), &small(window, 2).with_forms(1))?);
            Ok(out)
        }
        "translation-identities" => translation_suite(bundle, window),
        "braiding" => braiding_suite(&calc()?, window),
        "graded-braiding" => graded_braiding_suite(&calc()?),
        "completeness" => qpb::completeness_check(&calc()?, &small(window, 2).with_forms(form_cap(bundle))),
        "atiyah" => qpb::atiyah_check(&calc()?, &small(window, 2)),
        "vertical-calculus" => {
            let c = calc()?;
            let mut out = qpb::vertical_calculus_check(&c, &small(window, 1).with_forms(1))?;
            out.extend(qpb::horizontal_subalgebra_check(&c, &small(window, 1))?);
            Ok(out)
        }
        "connections" => connections_suite(bundle, window),
        "gauge" => gauge_suite(bundle, window),
        "module-action" => match &bundle.action {
            Some(a) => a.check(&small(window, 2).with_forms(1)),
            None => Err(Error::Other("not a smash product".into())),
        },
        "smash-braiding" => smash_braiding_suite(bundle),
        other => Err(Error::Other(format!("unknown suite `{other}`"))),
    }
}

/// `τ` on `t^n` (`|n|` up to the window, or 1 when `τ` is solved) and `t^k dt`, `|k| ≤ 1`.
fn translation_suite(bundle: &InstanceBundle, window: &MonomialWindow) -> Result<Vec<CheckOutcome>> {
    let g = &bundle.galois;
    let bound = if g.cleaving().is_some() { window.bound.max(1) } else { 1 };
    let mut hs = bundle.structure.grouplike_window(bound)?;
    let dt = bundle.structure.grouplike_window(1)?.iter().map(|t| t.mul(&t.d()?)).collect::<Result<Vec<_>>>()?;
    hs.extend(dt.into_iter().filter(|x| !x.is_zero()));
    let a = bundle.total();
    let as_ = elems(a, MonomialWindow::new(1).with_forms(1).enumerate(a)?);
    let bs = bundle.comodule().coinvariant_basis(&MonomialWindow::new(1))?;
    hopf::translation_identities(g, &hs, &as_, &bs)
}

fn algebra_elems(calc: &BundleCalculus, bound: u32) -> Result<Vec<Elem>> {
    let a = calc.total();
    Ok(elems(a, MonomialWindow::new(bound).enumerate(a)?))
}

/// Generators, their inverses and one product: the triples for the braid relation.
fn generator_elems(calc: &BundleCalculus) -> Result<Vec<Elem>> {
    let a = calc.total();
    let mut out = Vec::new();
    for g in a.algebra_gens() {
        out.push(Elem::monomial(a, Monomial::single(g, 1)));
        if a.gen(g).invertible {
            out.push(Elem::monomial(a, Monomial::single(g, -1)));
        }
    }
    Ok(out)
}

fn braiding_suite(calc: &BundleCalculus, window: &MonomialWindow) -> Result<Vec<CheckOutcome>> {
    let g = calc.galois();
    let pairs = algebra_elems(calc, window.bound.min(1))?;
    let mut mult = qpb::wedge_braiding_check(calc, &pairs)?;
    mult.check = "braiding-multiplication".into();
    let gens = generator_elems(calc)?;
    let mut out = vec![mult.windowed(), hopf::braid_relation(g, &gens)?.windowed()];
    let bs = calc.comodule().coinvariant_basis(&MonomialWindow::new(1))?;
    out.push(hopf::braiding_units(g, &gens, &bs)?.windowed());
    if calc.galois().cleaving().is_some() {
        out.extend(qpb::torus_generator_braiding(calc, &gens)?.into_iter().map(CheckOutcome::windowed));
    }
    Ok(out)
}

fn graded_braiding_suite(calc: &BundleCalculus) -> Result<Vec<CheckOutcome>> {
    let a = calc.total();
    let mut es = generator_elems(calc)?;
    es.truncate(3);
    es.extend(a.form_gens().filter(|&f| a.gen(f).form_degree == 1).take(2).map(|f| Elem::monomial(a, Monomial::single(f, 1))));
    let pairs = qpb::wedge_braiding_check(calc, &es)?.windowed();
    let triples = qpb::graded_braid_relation(calc, &es[..es.len().min(4)])?.windowed();
    Ok(vec![pairs, triples])
}

fn grid(params: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..params {
        out = out.into_iter().flat_map(|v| [-1i64, 0, 1].map(|x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

fn label(name: &str, args: &[i64]) -> String {
    if args.is_empty() {
        name.into()
    } else {
        format!("{name}({})", args.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
    }
}

fn tag(mut outs: Vec<CheckOutcome>, what: &str) -> Vec<CheckOutcome> {
    for o in &mut outs {
        o.check = format!("{}[{what}]", o.check);
    }
    outs
}

/// Registered connection templates over parameters in `{-1, 0, 1}`: both axioms,
/// flatness for those marked `flat`, and the projection `Π` with strongness.
fn connections_suite(bundle: &InstanceBundle, window: &MonomialWindow) -> Result<Vec<CheckOutcome>> {
    let calc = bundle.calculus()?;
    let exact = ExactForms::new(bundle.total(), &bundle.witnesses)?;
    let mut out = Vec::new();
    for t in &bundle.connections {
        for args in grid(t.params.len()) {
            let s = gauge::connection_from_template(bundle, &t.name, &args)?;
            let what = label(&t.name, &args);
            let mut outs = s.check(window)?;
            if t.flags.iter().any(|f| f == "flat") {
                outs.push(gauge::flatness_check(&s, &MonomialWindow::new(window.bound))?);
            }
            let conn = gauge::connection_from_form(&s, &exact);
            let w = small(window, 1);
            outs.extend(conn.check(&w)?);
            outs.push(gauge::is_strong(|x| conn.project(x), &calc, &w)?);
            out.extend(tag(outs, &what));
        }
    }
    Ok(out)
}

fn instantiate_gauges(bundle: &InstanceBundle) -> Result<Vec<GaugeTransformation>> {
    let mut out = Vec::new();
    for t in &bundle.gauges {
        for args in grid(t.params.len()) {
            out.push(gauge::gauge_from_template(bundle, &t.name, &args)?);
        }
    }
    Ok(out)
}

/// Registered gauges over parameters in `{-1, 0, 1}`: axioms, `θ` round trips and
/// anti-homomorphism, vertical-automorphism axioms, the graded extension with its
/// convolution inverse, and curvature equivariance for gauges whose vertical
/// automorphism is a DGA morphism.
fn gauge_suite(bundle: &InstanceBundle, window: &MonomialWindow) -> Result<Vec<CheckOutcome>> {
    let gs = instantiate_gauges(bundle)?;
    let w = small(window, 2);
    let mut out = Vec::new();
    for f in &gs {
        out.extend(tag(f.validate(window)?, &f.name));
    }
    out.extend(gauge::theta_round_trip_check(&gs, &w)?);
    let exact_a = ExactForms::new(bundle.total(), &bundle.witnesses)?;
    let exact_h = ExactForms::new(bundle.structure_pres(), &Default::default())?;
    let conns: Vec<_> = bundle
        .connections
        .iter()
        .map(|t| gauge::connection_from_template(bundle, &t.name, &vec![0; t.params.len()]))
        .collect::<Result<_>>()?;
    for f in &gs {
        let big = gauge::to_vertical(f);
        let mut outs = big.validate(&w)?;
        let graded = GradedGauge::dga_extension(f, &exact_h);
        outs.extend(graded.convolution_check(&small(window, 1))?);
        outs.push(graded.colinearity_check(&small(window, 1))?);
        outs.push(gauge::graded_round_trip_check(&graded, &small(window, 1))?);
        let ext = big.dga_extension(&exact_a);
        if ext.dga_morphism_check(&small(window, 1).with_forms(1))?.ok() {
            for s in &conns {
                let mut o = gauge::curvature_equivariance_check(&ext, s, &w)?;
                o.check = format!("{}[{}]", o.check, s.name);
                outs.push(o);
            }
        }
        out.extend(tag(outs, &f.name));
    }
    Ok(out)
}

/// The closed smash-product braiding against the generic one, on pairs built from
/// the first base generator `b` and `t`: `(b, 1)`, `(1, t)`, `(b⁻¹, t²)`, `(db, t)`, `(b, dt)`, `(db, t⁻¹dt)`.
fn smash_braiding_suite(bundle: &InstanceBundle) -> Result<Vec<CheckOutcome>> {
    let action = bundle.action.as_ref().ok_or_else(|| Error::Other("not a smash product".into()))?;
    let inc = bundle.galois.cleaving().ok_or_else(|| Error::Other("smash products are cleft".into()))?.clone();
    let a = bundle.total();
    let b = a
        .algebra_gens()
        .find(|&g| action.is_base(&Monomial::single(g, 1)))
        .ok_or_else(|| Error::Other("the base has no algebra generator".into()))?;
    let x = Elem::monomial(a, Monomial::single(b, 1));
    let xi = if a.gen(b).invertible { Elem::monomial(a, Monomial::single(b, -1)) } else { x.clone() };
    let h = |s: &str| bundle.eval_structure(s);
    let t = bundle.structure.grouplike()?;
    let one_a = Elem::one(a);
    let parts = vec![
        (x.clone(), Elem::one(bundle.structure_pres())),
        (one_a, h(&t)?),
        (xi, h(&format!("{t}^2"))?),
        (x.d()?, h(&t)?),
        (x.clone(), h(&format!("d({t})"))?),
        (x.d()?, h(&format!("{t}^-1*d({t})"))?),
    ];
    Ok(vec![qpb::smash_braiding_display(&bundle.calculus()?, &inc, &parts)?])
}
