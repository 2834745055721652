//! The acceptance criteria, one pass/fail line each, written straight to stdout.

mod common;

use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use qbundle::check::CheckOutcome;
use qbundle::cli::suites;
use qbundle::dga;
use qbundle::gauge::{self, ConnectionForm, ExactForms, GradedGauge};
use qbundle::hopf;
use qbundle::instances::{self, InstanceBundle};
use qbundle::ncalg::{Elem, MonomialWindow, Scalar, TensorElem};
use qbundle::qpb;
use qbundle::Result;

use common::bundle;

struct Verdict {
    ok: bool,
    detail: String,
}

/// Collects outcomes and the names of failing ones.
#[derive(Default)]
struct Gate {
    passed: usize,
    failed: Vec<String>,
}

impl Gate {
    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        if ok {
            self.passed += 1;
        } else {
            self.failed.push(what.into());
        }
    }

    fn outcomes(&mut self, outs: &[CheckOutcome], ctx: &str) {
        for o in outs {
            let w = o.witness.as_deref().unwrap_or("");
            self.expect(o.ok(), format!("{ctx} {}: {w}", o.check));
        }
    }

    fn records(&mut self, rs: &[suites::Record]) {
        for r in rs {
            let w = r.witness.as_deref().unwrap_or("");
            self.expect(r.ok(), format!("{}/{} {}: {w}", r.instance, r.suite, r.check));
        }
    }

    fn verdict(self, what: &str) -> Verdict {
        let total = self.passed + self.failed.len();
        let detail = match self.failed.first() {
            None => format!("{total}/{total} {what}"),
            Some(first) => format!("{}/{total} failed; first: {first}", self.failed.len()),
        };
        Verdict { ok: self.failed.is_empty(), detail }
    }
}

fn exact(b: &InstanceBundle) -> Result<ExactForms> {
    ExactForms::new(b.total(), &b.witnesses)
}

fn literal_form(b: &InstanceBundle, src: &str) -> Result<ConnectionForm> {
    ConnectionForm::new(src, &b.calculus()?, vec![b.eval(src)?])
}

fn gauge_computation() -> Result<Verdict> {
    let b = bundle("torus");
    let s = gauge::connection_from_template(&b, "s", &[0, 0])?;
    let mut g = Gate::default();
    g.expect(s.images()[0] == b.eval("u^-1*du")?, "s(t^-1dt) = u^-1du");
    for n in -2..=2i64 {
        let f = gauge::gauge_from_template(&b, "f", &[n])?;
        let moved = gauge::gauge_act(&gauge::to_vertical(&f).dga_extension(&exact(&b)?), &s)?;
        let want = b
            .eval(&format!("u^-1*du + {n}*u*v*d(v^-1*u^-1)"))?
            .scale(&Scalar::q_pow((n * (1 - n)) as i32));
        g.expect(moved.images()[0] == want, format!("n = {n}: got {}", moved.images()[0]));
    }
    Ok(g.verdict("exact normal forms"))
}

fn flatness() -> Result<Verdict> {
    let b = bundle("torus");
    let win = MonomialWindow::new(4);
    let mut g = Gate::default();
    let mut family = Vec::new();
    for k in -3..=3i64 {
        for l in -3..=3i64 {
            for head in ["u^-1*du", "v^-1*dv"] {
                let s = literal_form(&b, &format!("{head} + u^{k}*v^{k}*d(u^{l}*v^{l})"))?;
                g.outcomes(&[gauge::flatness_check(&s, &win)?], &s.name);
                family.push(s);
            }
        }
    }
    for (i, j) in [(0usize, 1usize), (10, 57), (24, 97), (3, 90)] {
        for t in [Scalar::zero(), Scalar::from_ratio(1, 2), Scalar::one()] {
            let c = gauge::convex_combine(&family[i], &family[j], &t)?;
            g.outcomes(&[gauge::flatness_check(&c, &win)?], &c.name);
        }
    }
    Ok(g.verdict("curvatures vanish"))
}

fn closedness() -> Result<Verdict> {
    let b = bundle("torus");
    let w = b.eval("u*v*d(v^-1*u^-1)")?;
    let mut g = Gate::default();
    g.expect(!w.is_zero(), "uv d(v^-1u^-1) is nonzero");
    g.expect(w.d()?.is_zero(), format!("d(uv d(v^-1u^-1)) = {}", w.d()?));
    g.expect(b.calculus()?.is_basic(&w)?, "uv d(v^-1u^-1) is basic");
    Ok(g.verdict("closed and basic"))
}

fn graded_hopf_sign() -> Result<Verdict> {
    let h = instances::load_hopf("u1", None)?;
    let window = h.grouplike_window(2)?;
    let mut g = Gate::default();
    for x in &window {
        for y in &window {
            for z in &window {
                let engine = dga::sweedler_differential_product(&h.hopf, x, y, z)?;
                g.expect(engine == dga::four_term_display(&h.hopf, x, y, z, -1)?, format!("{x}, {y}, {z}"));
                if !y.d()?.is_zero() && !z.d()?.is_zero() {
                    let unsigned = dga::four_term_display(&h.hopf, x, y, z, 1)?;
                    g.expect(engine != unsigned, format!("{x}, {y}, {z}: the unsigned display also matches"));
                }
            }
        }
    }
    Ok(g.verdict("expansions match the signed display"))
}

fn translation_identities() -> Result<Verdict> {
    let mut g = Gate::default();
    for (name, bound) in [("torus", 4u32), ("su_q2", 1)] {
        let b = bundle(name);
        let mut hs = b.structure.grouplike_window(bound)?;
        for t in b.structure.grouplike_window(1)? {
            let x = t.mul(&t.d()?)?;
            if !x.is_zero() {
                hs.push(x);
            }
        }
        let a = b.total();
        let as_: Vec<Elem> =
            MonomialWindow::new(1).with_forms(1).enumerate(a)?.into_iter().map(|m| Elem::monomial(a, m)).collect();
        let bs = b.comodule().coinvariant_basis(&MonomialWindow::new(1))?;
        let outs = hopf::translation_identities(&b.galois, &hs, &as_, &bs)?;
        g.expect(outs.len() == 7, format!("{name}: {} identities", outs.len()));
        g.outcomes(&outs, name);
    }
    Ok(g.verdict("identities"))
}

fn braiding() -> Result<Verdict> {
    let mut g = Gate::default();
    for name in common::BUILTINS {
        let b = bundle(name);
        g.records(&suites::run(&b, "braiding", Some(1))?);
        g.records(&suites::run(&b, "graded-braiding", None)?);
    }
    let b = bundle("torus");
    let a = b.total();
    let window: Vec<Elem> = MonomialWindow::new(1).enumerate(a)?.into_iter().map(|m| Elem::monomial(a, m)).collect();
    g.outcomes(&[hopf::braid_relation(&b.galois, &window)?], "torus window triples");
    let calc = b.calculus()?;
    let gens: Vec<Elem> = ["u", "v", "u^-1", "v^-1"].iter().map(|s| b.eval(s)).collect::<Result<_>>()?;
    let squares = qpb::torus_generator_braiding(&calc, &gens)?;
    g.expect(squares.iter().any(|o| o.check == "braiding-squares-to-identity"), "torus square check ran");
    g.outcomes(&squares, "torus");
    Ok(g.verdict("braiding checks"))
}

fn completeness_and_atiyah() -> Result<Verdict> {
    let mut g = Gate::default();
    for name in common::BUILTINS {
        let b = bundle(name);
        g.records(&suites::run(&b, "completeness", None)?);
        g.records(&suites::run(&b, "atiyah", None)?);
    }
    Ok(g.verdict("completeness and Atiyah checks"))
}

fn podles() -> Result<Verdict> {
    let b = bundle("su_q2");
    let relations = [("Bm*B0", "q^2*B0*Bm"), ("Bm*Bp", "q^2*B0*(1 - q^2*B0)"), ("Bp*Bm", "B0*(1 - B0)")];
    let check = |gens: [(&str, &str); 3]| -> Result<Gate> {
        let mut g = Gate::default();
        let sub = |e: &str| gens.iter().fold(e.to_string(), |acc, (n, v)| acc.replace(n, &format!("({v})")));
        for (lhs, rhs) in relations {
            let (l, r) = (b.eval(&sub(lhs))?, b.eval(&sub(rhs))?);
            g.expect(l == r, format!("{lhs} = {rhs}: {l} vs {r}"));
        }
        for (n, v) in gens {
            g.expect(b.comodule().is_coinvariant(&b.eval(v)?)?, format!("{n} coinvariant"));
        }
        Ok(g)
    };
    let literal = check([("Bp", "alpha*beta"), ("Bm", "gamma*delta"), ("B0", "gamma*beta")])?.verdict("relations");
    let rescaled = check([("Bp", "alpha*beta"), ("Bm", "-q*gamma*delta"), ("B0", "-q^-1*gamma*beta")])?.verdict("relations");
    Ok(Verdict {
        ok: literal.ok,
        detail: format!("Bp = ab, Bm = cd, B0 = cb: {}; Bm = -q cd, B0 = -q^-1 cb: {}", literal.detail, rescaled.detail),
    })
}

fn connection_gate() -> Result<Verdict> {
    let b = bundle("torus");
    let calc = b.calculus()?;
    let mut g = Gate::default();
    let mut second = Gate::default();
    let maurer_cartan = TensorElem::pure(&[&Elem::one(b.total()), &b.eval_structure("t^-1*d(t)")?]);
    for k in -3..=3i64 {
        for l in -3..=3i64 {
            for head in ["u^-1*du", "v^-1*dv"] {
                let s = literal_form(&b, &format!("{head} + u^{k}*v^{k}*d(u^{l}*v^{l})"))?;
                let first = head == "u^-1*du";
                for o in s.check(&b.window)? {
                    let gate = if first || o.check != "connection-vertical" { &mut g } else { &mut second };
                    gate.outcomes(&[o], &s.name);
                }
                let v = calc.vertical_part(&s.images()[0])?;
                let gate = if first { &mut g } else { &mut second };
                gate.expect(v == maurer_cartan, format!("{}: pi_v = {v}", s.name));
            }
        }
    }
    for m in [-2i64, -1, 1, 2] {
        for n in [-2i64, -1, 1, 2] {
            for src in [format!("u^{m}*d(v^{n})"), format!("v^{m}*d(u^{n})")] {
                let outs = literal_form(&b, &src)?.check(&b.window)?;
                g.expect(outs.iter().any(|o| o.check == "connection-vertical" && !o.ok()), format!("{src} passes verticality"));
            }
        }
    }
    let s1 = gauge::connection_from_template(&b, "s", &[1, -1])?;
    let s2 = gauge::connection_from_template(&b, "s", &[2, 3])?;
    for t in [Scalar::zero(), Scalar::from_ratio(1, 2), Scalar::one()] {
        let c = gauge::convex_combine(&s1, &s2, &t)?;
        g.outcomes(&c.check(&b.window)?, &c.name);
    }
    let (main, fam) = (g.verdict("other checks"), second.verdict("second-family vertical checks"));
    Ok(Verdict { ok: main.ok && fam.ok, detail: format!("{}; second family: {}", main.detail, fam.detail) })
}

fn gauge_group() -> Result<Verdict> {
    let mut g = Gate::default();
    for name in common::BUILTINS {
        let b = bundle(name);
        let mut gs: Vec<_> = [0i64, 1, -2].iter().map(|m| gauge::gauge_from_template(&b, "phase", &[*m])).collect::<Result<_>>()?;
        if b.gauge_template("f").is_ok() {
            for n in [-1i64, 2] {
                gs.push(gauge::gauge_from_template(&b, "f", &[n])?);
            }
        }
        g.expect(gs.len() >= 3, format!("{name}: {} gauges", gs.len()));
        let outs = gauge::theta_round_trip_check(&gs, &MonomialWindow::new(b.window.bound.min(2)))?;
        g.expect(outs.iter().any(|o| o.check == "theta-antihomomorphism"), format!("{name}: anti-homomorphism ran"));
        g.outcomes(&outs, name);
    }
    Ok(g.verdict("round trips and anti-homomorphism checks"))
}

fn graded_convolution() -> Result<Verdict> {
    let b = bundle("torus");
    let ex = ExactForms::new(b.structure_pres(), &BTreeMap::new())?;
    let win = MonomialWindow::new(2);
    let dt = b.eval_structure("d(t)")?;
    let t = b.eval_structure("t")?;
    let mut g = Gate::default();
    for n in -2..=2i64 {
        let f = GradedGauge::dga_extension(&gauge::gauge_from_template(&b, "f", &[n])?, &ex);
        let outs = f.convolution_check(&win)?;
        g.expect(outs.len() == 2, format!("n = {n}: degrees checked"));
        g.outcomes(&outs, &format!("n = {n}"));
        let fi = f.base.eval_inverse(&t)?;
        let want = -&fi.mul(&f.apply(&dt)?)?.mul(&fi)?;
        g.expect(f.inverse(&dt)? == want, format!("n = {n}: g1(dt) = -f^-1(t) f1(dt) f^-1(t)"));
    }
    Ok(g.verdict("convolution identities"))
}

fn axiom_foundation() -> Result<Verdict> {
    let mut g = Gate::default();
    for name in common::BUILTINS {
        let b = bundle(name);
        g.records(&suites::run(&b, "hopf-axioms", None)?);
        g.records(&suites::run(&b, "dga", None)?);
    }
    for name in ["u1", "u1q"] {
        let h = instances::load_hopf(name, None)?;
        g.outcomes(&[dga::cartan_maurer_equation_check(&h.hopf, &MonomialWindow::new(4))?], name);
    }
    let confluence = common::confluence_suite(500, 7);
    g.expect(confluence.is_empty(), format!("confluence: {} of 500 cases fail, first {:?}", confluence.len(), confluence.first()));
    let assoc = common::associativity_suite(500, 11);
    g.expect(assoc.is_empty(), format!("associativity: {} of 500 cases fail, first {:?}", assoc.len(), assoc.first()));
    Ok(g.verdict("axiom checks and randomized suites"))
}

/// Criteria that cannot hold as stated, with the reason. They must still fail.
const UNATTAINABLE: &[(usize, &str)] = &[
    (
        8,
        "with Bp = alpha*beta, Bm = gamma*delta, B0 = gamma*beta the two inhomogeneous relations fail \
         (Bp*Bm = q^-2*beta*gamma + q^-3*beta^2*gamma^2, B0*(1 - B0) = beta*gamma - beta^2*gamma^2); \
         Bm = -q*gamma*delta, B0 = -q^-1*gamma*beta satisfy all three",
    ),
    (
        9,
        "v^-1*dv + b db' has vertical part -1(x)t^-1dt since dv maps to dv(x)t^-1, so it fails \
         connection-vertical; -v^-1*dv + b db' (template `r`) passes",
    ),
];

#[test]
fn acceptance() {
    type Criterion = (usize, &'static str, fn() -> Result<Verdict>);
    let criteria: [Criterion; 12] = [
        (1, "gauge computation", gauge_computation),
        (2, "flatness", flatness),
        (3, "closedness", closedness),
        (4, "graded Hopf sign", graded_hopf_sign),
        (5, "translation identities", translation_identities),
        (6, "braiding", braiding),
        (7, "completeness and Atiyah", completeness_and_atiyah),
        (8, "Podles relations", podles),
        (9, "connection gate", connection_gate),
        (10, "gauge group", gauge_group),
        (11, "graded convolution inverse", graded_convolution),
        (12, "axiom foundation", axiom_foundation),
    ];
    let mut surprises = Vec::new();
    let mut out = std::io::stdout().lock();
    for (n, name, run) in criteria {
        let start = Instant::now();
        let v = run().unwrap_or_else(|e| Verdict { ok: false, detail: format!("error: {e}") });
        let secs = start.elapsed().as_secs_f64();
        writeln!(out, "criterion {n:2} {name:<28} {} ({secs:.1}s) {}", if v.ok { "PASS" } else { "FAIL" }, v.detail).ok();
        match UNATTAINABLE.iter().find(|(k, _)| *k == n) {
            Some((_, why)) => {
                writeln!(out, "             expected failure: {why}").ok();
                if v.ok {
                    surprises.push(format!("criterion {n} passed but is listed as unattainable"));
                }
            }
            None if !v.ok => surprises.push(format!("criterion {n}: {}", v.detail)),
            None => {}
        }
    }
    assert!(surprises.is_empty(), "{surprises:#?}");
}
