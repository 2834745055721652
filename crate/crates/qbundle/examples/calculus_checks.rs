//! DGA axioms, completeness and the Atiyah sequence on every built-in bundle.

use qbundle::cli::suites;
use qbundle::instances;

fn main() -> qbundle::Result<()> {
    for name in instances::list() {
        let b = instances::load(name)?;
        for suite in ["dga", "completeness", "atiyah", "vertical-calculus"] {
            let records = suites::run(&b, suite, Some(1))?;
            let failed = records.iter().filter(|r| !r.ok()).count();
            println!("{name:<8} {suite:<18} {} checks, {failed} failed", records.len());
        }
    }
    Ok(())
}
