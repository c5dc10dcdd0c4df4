//! B_J and B_T on each catalog entry, with the Reeb component
//! B_J(Z₁,Z₂,Z₂,Z₁) next to its closed form in τ.

use contact_curvature::bochner::bochner_pair_at;
use contact_curvature::catalog::{self, reeb_bochner_closed_form};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for info in catalog::entries() {
        let (cp, _) = catalog::resolve(&info.address)?;
        let p = cp.points(Some(1)).remove(0);
        let pt = cp.at(&p)?;
        let (bj, bt) = bochner_pair_at(&pt)?;
        let (z1, z2) = (pt.reeb_v(0), pt.reeb_v(1));
        let (m, n) = cp.pair_type();
        println!(
            "{:<22} ‖B_J‖∞ = {:.3e}  ‖B_T‖∞ = {:.3e}  B_J(Z₁,Z₂,Z₂,Z₁) = {:+.6}  closed form {:+.6}",
            info.label,
            bj.max_abs(),
            bt.max_abs(),
            bj.apply4(&z1, &z2, &z2, &z1),
            reeb_bochner_closed_form(m as f64, n as f64, pt.geometry.scalar),
        );
    }
    Ok(())
}
