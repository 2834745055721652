//! The translation map and the braiding of a Hopf-Galois extension.

use qbundle::hopf;
use qbundle::instances;
use qbundle::ncalg::{MonomialWindow, TensorElem};

fn main() -> qbundle::Result<()> {
    for b in [instances::torus_bundle()?, instances::quantum_hopf_fibration()?] {
        println!("{}:", b.name);
        for h in b.structure.grouplike_window(1)? {
            println!("  tau({h}) = {}", b.galois.translation(&h)?);
        }
        let hs = b.structure.grouplike_window(1)?;
        let bs = b.comodule().coinvariant_basis(&MonomialWindow::new(1))?;
        let a = b.total();
        let gens: Vec<_> = a.algebra_gens().map(|g| qbundle::ncalg::Elem::monomial(a, qbundle::ncalg::Monomial::single(g, 1))).collect();
        for o in hopf::translation_identities(&b.galois, &hs, &gens, &bs)? {
            println!("  {:<28} {:?}", o.check, o.status);
        }
        let x = TensorElem::pure(&[&gens[1], &gens[0]]);
        println!("  sigma({x}) = {}", b.galois.braiding(&x)?);
        println!("  {:?}", hopf::braid_relation(&b.galois, &gens)?.status);
    }
    Ok(())
}
