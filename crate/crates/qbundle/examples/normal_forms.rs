//! Normal forms on the noncommutative torus and on quantum SU(2).

use qbundle::instances;

fn main() -> qbundle::Result<()> {
    let torus = instances::torus_bundle()?;
    for src in ["v*u", "(u*v)^2", "v^-1*u^-1*u*v", "d(u*v)", "u*v*d(v^-1*u^-1)", "d(u*v*d(v^-1*u^-1))"] {
        println!("torus  {src:<24} = {}", torus.eval(src)?);
    }
    let su = instances::quantum_hopf_fibration()?;
    for src in ["delta*alpha", "alpha*delta - delta*alpha", "Bm*B0", "Bp*Bm", "d(alpha)"] {
        println!("su_q2  {src:<24} = {}", su.eval(src)?);
    }
    Ok(())
}
