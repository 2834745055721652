//! Connection forms on the torus and on quantum SU(2), with their curvature.

use qbundle::gauge::{self, ConnectionForm};
use qbundle::instances;
use qbundle::ncalg::{MonomialWindow, Scalar};

fn main() -> qbundle::Result<()> {
    let torus = instances::torus_bundle()?;
    let calc = torus.calculus()?;
    let t = torus.eval_structure("t")?;
    for (k, l) in [(0, 0), (1, 1), (2, -1)] {
        let s = gauge::connection_from_template(&torus, "s", &[k, l])?;
        let ok = s.check(&torus.window)?.iter().all(|o| o.ok());
        println!("s({k},{l}) = {}: connection {ok}, R(pi(t)) = {}", s.images()[0], gauge::curvature_form(&s, &t)?);
    }
    for src in ["v^-1*dv", "u*dv"] {
        let s = ConnectionForm::new(src, &calc, vec![torus.eval(src)?])?;
        for o in s.check(&torus.window)? {
            println!("{src}: {} {:?}", o.check, o.status);
        }
    }
    let s1 = gauge::connection_from_template(&torus, "s", &[1, 1])?;
    let s2 = gauge::connection_from_template(&torus, "r", &[0, 0])?;
    let mid = gauge::convex_combine(&s1, &s2, &Scalar::from_ratio(1, 2))?;
    println!("{} = {}: flat {}", mid.name, mid.images()[0], gauge::flatness_check(&mid, &MonomialWindow::new(2))?.ok());

    let su = instances::quantum_hopf_fibration()?;
    let e = gauge::connection_from_template(&su, "e", &[])?;
    for h in su.structure.grouplike_window(1)? {
        println!("su_q2: R_e(pi({h})) = {}", gauge::curvature_form(&e, &h)?);
    }
    Ok(())
}
