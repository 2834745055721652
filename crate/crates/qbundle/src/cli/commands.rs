//! The command-line verbs, as functions from arguments to printed output.

use std::fmt::Write as _;
use std::thread;

use serde_json::json;

use crate::error::{Error, Result};
use crate::gauge::{self, ConnectionForm, ExactForms, GradedGauge, VerticalAutomorphism};
use crate::instances::{self, InstanceBundle};
use crate::ncalg::{Elem, Scalar, TensorElem};

use super::expr;
use super::suites::{self, Record};

/// Printed output and whether the command succeeded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub ok: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, ok: true }
    }
}

/// `eval`: the normal form of an expression over the total space (named elements and `H` allowed).
pub fn eval(bundle: &InstanceBundle, src: &str) -> Result<Output> {
    let v = expr::eval(&expr::parse(src)?, &bundle.scope())?;
    Ok(Output::ok(v.render(bundle.total().param())))
}

/// `normal-form`: one JSON record with the normal form, term count, form degrees and weights.
pub fn normal_form(bundle: &InstanceBundle, src: &str) -> Result<Output> {
    let v = expr::eval(&expr::parse(src)?, &bundle.scope())?;
    let rendered = v.render(bundle.total().param());
    let record = match &v {
        expr::Value::Elem(e) => {
            let p = e.pres();
            let degrees: std::collections::BTreeSet<u32> = e.terms().keys().map(|m| p.form_degree(m)).collect();
            let weights: std::collections::BTreeSet<i32> = e.terms().keys().map(|m| p.weight(m)).collect();
            json!({"input": src, "normal_form": rendered, "terms": e.len(), "degrees": degrees, "weights": weights})
        }
        expr::Value::Tensor(t) => json!({"input": src, "normal_form": rendered, "terms": t.terms().len(), "factors": t.arity()}),
        expr::Value::Scalar(_) => json!({"input": src, "normal_form": rendered, "terms": usize::from(!v.is_zero())}),
    };
    Ok(Output::ok(record.to_string()))
}

/// Runs one suite (or `all`) on each bundle; suites run in parallel and are merged in
/// the fixed order of instances, then suites.
pub fn check(bundles: &[InstanceBundle], suite: &str, window: Option<u32>) -> Result<Vec<Record>> {
    let mut jobs = Vec::new();
    for b in bundles {
        let names: Vec<&str> = if suite == "all" {
            suites::SUITES.iter().copied().filter(|s| suites::applicable(b, s)).collect()
        } else {
            vec![suite]
        };
        for s in names {
            jobs.push((b, s));
        }
    }
    let results: Vec<Result<Vec<Record>>> = thread::scope(|scope| {
        let handles: Vec<_> = jobs.iter().map(|(b, s)| scope.spawn(move || suites::run(b, s, window))).collect();
        handles.into_iter().map(|h| h.join().unwrap_or_else(|_| Err(Error::Other("suite panicked".into())))).collect()
    });
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

/// Renders records as JSON lines.
pub fn report(records: &[Record]) -> String {
    records.iter().map(|r| r.to_json() + "\n").collect()
}

/// `name(1,-2)` or `name` into a name and integer arguments.
pub fn parse_id(id: &str) -> Result<(String, Vec<i64>)> {
    let id = id.trim();
    match id.split_once('(') {
        None => Ok((id.to_string(), Vec::new())),
        Some((n, rest)) => {
            let inner = rest.strip_suffix(')').ok_or_else(|| Error::Other(format!("unclosed argument list in `{id}`")))?;
            let args = inner
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<i64>().map_err(|_| Error::Other(format!("`{s}` is not an integer"))))
                .collect::<Result<_>>()?;
            Ok((n.trim().to_string(), args))
        }
    }
}

/// A connection id, or the first registered connection with all parameters zero.
pub fn resolve_connection(bundle: &InstanceBundle, id: Option<&str>) -> Result<ConnectionForm> {
    let (name, args) = match id {
        Some(id) => parse_id(id)?,
        None => {
            let t = bundle.connections.first().ok_or_else(|| Error::Other(format!("`{}` registers no connection", bundle.name)))?;
            (t.name.clone(), vec![0; t.params.len()])
        }
    };
    gauge::connection_from_template(bundle, &name, &args)
}

/// A gauge id such as `f(2)`, or a bare integer `n` for the first one-parameter gauge at `n`.
pub fn resolve_gauge(bundle: &InstanceBundle, id: &str) -> Result<gauge::GaugeTransformation> {
    let (name, args) = match id.trim().parse::<i64>() {
        Ok(n) => {
            let t = bundle
                .gauges
                .iter()
                .find(|t| t.params.len() == 1)
                .ok_or_else(|| Error::Other(format!("`{}` registers no one-parameter gauge", bundle.name)))?;
            (t.name.clone(), vec![n])
        }
        Err(_) => parse_id(id)?,
    };
    gauge::gauge_from_template(bundle, &name, &args)
}

fn basis_label(bundle: &InstanceBundle, i: usize) -> String {
    bundle.calculus().map(|c| c.lambda()[i].render()).unwrap_or_else(|_| format!("lambda[{i}]"))
}

/// The scalar `c` with `π_v(ω) = c·(1⊗λ)`.
fn vertical_phase(bundle: &InstanceBundle, omega: &Elem, lambda: &Elem) -> Result<Option<Scalar>> {
    let calc = bundle.calculus()?;
    let v = calc.vertical_part(omega)?;
    let unit = TensorElem::pure(&[&Elem::one(bundle.total()), lambda]);
    let Some((k, _)) = unit.terms().iter().next() else { return Ok(None) };
    let c = v.terms().get(k).cloned().unwrap_or_else(Scalar::zero);
    Ok((v == unit.scale(&c)).then_some(c))
}

/// `gauge-act`: `F▷s` for the vertical automorphism of a gauge, split as `phase·(s + shift)`,
/// with the shift tested for being basic and closed, and the curvature of `F▷s` on `t`.
pub fn gauge_act(bundle: &InstanceBundle, gauge_id: &str, connection: Option<&str>, graded: bool) -> Result<Output> {
    let f = resolve_gauge(bundle, gauge_id)?;
    let s = resolve_connection(bundle, connection)?;
    let big: VerticalAutomorphism = if graded {
        let exact_h = ExactForms::new(bundle.structure_pres(), &Default::default())?;
        gauge::graded_vertical(&GradedGauge::dga_extension(&f, &exact_h))
    } else {
        gauge::to_vertical(&f).dga_extension(&ExactForms::new(bundle.total(), &bundle.witnesses)?)
    };
    let moved = gauge::gauge_act(&big, &s)?;
    let calc = bundle.calculus()?;
    let param = bundle.total().param().to_string();
    let mut text = String::new();
    writeln!(text, "gauge: {} ({})", f.name, if graded { "graded extension" } else { "F(a0)dF(a1) extension" }).ok();
    for (i, (before, after)) in s.images().iter().zip(moved.images()).enumerate() {
        let lambda = &calc.lambda()[i];
        writeln!(text, "s({}) = {}", basis_label(bundle, i), before.render()).ok();
        match vertical_phase(bundle, after, lambda)?.and_then(|c| c.inverse().map(|ci| (c, ci))) {
            Some((c, ci)) => {
                let shift = &after.scale(&ci) - before;
                let sum = match shift.render() {
                    r if r == "0" => "s".to_string(),
                    r => match r.strip_prefix('-') {
                        Some(neg) => format!("s - {neg}"),
                        None => format!("s + {r}"),
                    },
                };
                writeln!(text, "F|>s({}) = {}*({sum})", basis_label(bundle, i), c.render(&param)).ok();
                writeln!(text, "phase: {}", c.render(&param)).ok();
                writeln!(text, "shift: {}", shift.render()).ok();
                writeln!(text, "shift basic: {}", calc.is_basic(&shift)?).ok();
                writeln!(text, "shift closed: {}", shift.d()?.is_zero()).ok();
            }
            None => {
                writeln!(text, "F|>s({}) = {}", basis_label(bundle, i), after.render()).ok();
            }
        }
    }
    let t = bundle.structure.grouplike()?;
    let h = bundle.eval_structure(&t)?;
    writeln!(text, "curvature R(pi({t})) = {}", gauge::curvature_form(&moved, &h)?.render()).ok();
    Ok(Output::ok(text))
}

/// `curvature`: `R_s(π_ε(t^k))` for `0 < |k| ≤ window`.
pub fn curvature(bundle: &InstanceBundle, connection: Option<&str>, window: Option<u32>) -> Result<Output> {
    let s = resolve_connection(bundle, connection)?;
    let n = window.unwrap_or(2).max(1) as i32;
    let t = bundle.structure.grouplike()?;
    let mut text = String::new();
    writeln!(text, "connection: {}", s.name).ok();
    for k in -n..=n {
        if k == 0 {
            continue;
        }
        let h = bundle.hopf().grouplike(&t, k)?;
        writeln!(text, "R(pi({})) = {}", h.render(), gauge::curvature_form(&s, &h)?.render()).ok();
    }
    Ok(Output::ok(text))
}

/// `list-instances`: the built-in instances with their kind and description.
pub fn list_instances() -> Output {
    let mut text = String::new();
    for name in instances::list() {
        let src = instances::builtin::text(name).unwrap_or_default();
        let about: Vec<&str> = src.lines().take_while(|l| l.starts_with('#')).map(|l| l.trim_start_matches('#').trim()).collect();
        let kind = src.lines().find(|l| !l.starts_with('#') && !l.trim().is_empty()).and_then(|l| l.split_whitespace().next()).unwrap_or("");
        writeln!(text, "{name}\t{kind}\t{}", about.join(" ")).ok();
    }
    Output::ok(text)
}

/// Loads a built-in name or a file path; `all` loads every built-in.
pub fn load_instances(source: &str) -> Result<Vec<InstanceBundle>> {
    if source == "all" {
        instances::list().into_iter().map(instances::load).collect()
    } else {
        Ok(vec![instances::load(source)?])
    }
}
