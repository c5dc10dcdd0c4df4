//! Runs the covariant-derivative and curvature identities on every
//! catalog entry and prints a one-line summary each.

use contact_curvature::catalog;
use contact_curvature::contact::lemma_suite;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for info in catalog::entries() {
        let (cp, _) = catalog::resolve(&info.address)?;
        let rep = lemma_suite(&cp)?;
        let worst = rep.records.iter().fold(0.0f64, |a, r| a.max(r.residual));
        let s = rep.summary();
        println!(
            "{:<22} {:>4} checks, {:>3} failed, worst residual {worst:.2e}",
            info.label, s.total, s.failed
        );
    }
    Ok(())
}
