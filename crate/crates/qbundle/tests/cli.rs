use std::path::PathBuf;
use std::process::{Command, Output};

fn qbundle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qbundle")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qbundle-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn eval_examples() {
    for (inst, expr, want) in [
        ("torus", "u*v - q^-1*v*u", "0"),
        ("torus", "v*u", "q*u*v"),
        ("torus", "d(u*v*d(v^-1*u^-1))", "0"),
        ("su_q2", "delta*alpha", "1 + q*beta*gamma"),
    ] {
        let o = qbundle(&["eval", inst, expr]);
        assert!(o.status.success(), "{expr}: {}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(stdout(&o), want, "{expr}");
    }
    let o = qbundle(&["eval", "--instance", "torus", "v*u"]);
    assert_eq!(stdout(&o), "q*u*v");
}

#[test]
fn normal_form_record() {
    let o = qbundle(&["normal-form", "torus", "u^-1*d(u) + v*u"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["normal_form"], "u^-1*du + q*u*v");
    assert_eq!(v["terms"], 2);
    assert_eq!(v["degrees"], serde_json::json!([0, 1]));
    assert_eq!(v["weights"], serde_json::json!([0]));
}

#[test]
fn gauge_act_reports_phase_and_shift() {
    let o = qbundle(&["gauge-act", "torus", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("phase: q^-2"), "{text}");
    assert!(text.contains("shift basic: true"), "{text}");
    assert!(text.contains("shift closed: true"), "{text}");
    let o = qbundle(&["gauge-act", "torus", "f(1)", "--connection", "s(0,0)"]);
    assert!(stdout(&o).contains("phase: 1"), "{}", stdout(&o));
}

#[test]
fn curvature_of_flat_and_curved_connections() {
    let o = qbundle(&["curvature", "torus", "s(1,2)"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().skip(1).all(|l| l.ends_with("= 0")), "{}", stdout(&o));
    let o = qbundle(&["curvature", "su_q2", "--window", "1"]);
    assert!(stdout(&o).lines().skip(1).all(|l| !l.ends_with("= 0")), "{}", stdout(&o));
}

#[test]
fn list_instances_names_builtins() {
    let text = stdout(&qbundle(&["list-instances"]));
    for name in ["torus", "su_q2", "smash_w", "hopf_u1"] {
        assert!(text.lines().any(|l| l.starts_with(name)), "{text}");
    }
}

#[test]
fn check_writes_identical_reports() {
    let (a, b) = (scratch("a.jsonl"), scratch("b.jsonl"));
    for path in [&a, &b] {
        let o = qbundle(&["check", "torus", "--suite", "all", "--window", "1", "--report", path.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let (ra, rb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ra, rb);
    for line in String::from_utf8(ra).unwrap().lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["instance"], "torus");
        assert_eq!(v["window"], 1);
        assert!(matches!(v["status"].as_str(), Some("pass" | "window-certified")), "{line}");
    }
}

#[test]
fn failing_check_exits_with_one() {
    let src = include_str!("../instances/torus.qb").replace("rel dv*u = q*u*dv", "rel dv*u = u*dv");
    let path = scratch("bad_torus.qb");
    std::fs::write(&path, src).unwrap();
    let o = qbundle(&["check", "--instance", path.to_str().unwrap(), "--suite", "dga"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("\"check\":\"relations-closed-under-d\",\"status\":\"fail\""), "{}", stdout(&o));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["check", "no_such_instance"],
        vec!["check", "torus", "no-such-suite"],
        vec!["check", "torus", "module-action"],
        vec!["eval", "torus", "u +"],
        vec!["gauge-act", "torus", "g(1)"],
    ] {
        let o = qbundle(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"), "{args:?}");
    }
}
