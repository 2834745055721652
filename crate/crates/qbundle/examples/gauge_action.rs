//! Gauge transformations f(t) = u^-n v^-n acting on the torus connection u^-1 du.

use qbundle::gauge::{self, ExactForms};
use qbundle::instances;
use qbundle::ncalg::MonomialWindow;

fn main() -> qbundle::Result<()> {
    let b = instances::torus_bundle()?;
    let exact = ExactForms::new(b.total(), &b.witnesses)?;
    let s = gauge::connection_from_template(&b, "s", &[0, 0])?;
    let t = b.eval_structure("t")?;
    for n in -2..=2 {
        let f = gauge::gauge_from_template(&b, "f", &[n])?;
        let big = gauge::to_vertical(&f).dga_extension(&exact);
        let moved = gauge::gauge_act(&big, &s)?;
        println!("n = {n:>2}: f(t) = {}, F|>s = {}", f.eval(&t)?, moved.images()[0]);
    }
    let gs: Vec<_> = (-1..=1).map(|n| gauge::gauge_from_template(&b, "f", &[n])).collect::<qbundle::Result<_>>()?;
    for o in gauge::theta_round_trip_check(&gs, &MonomialWindow::new(2))? {
        println!("{:<28} {:?}", o.check, o.status);
    }
    Ok(())
}
