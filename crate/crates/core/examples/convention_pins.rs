//! The executable convention pins: exterior-derivative factor, notation
//! reading of the Bochner formula, and the Heisenberg scales.

use contact_curvature::bochner::pin_notation_reading;
use contact_curvature::catalog::{pin_exterior_factor, pin_heisenberg_scales};
use contact_curvature::conventions::ledger;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s = pin_exterior_factor()?;
    for (c, r) in &s.candidates {
        println!("s = {c:<4} φ² residual {r:.2e}");
    }
    println!("pinned s = {:?}", s.unique());

    let reading = pin_notation_reading(1e-6)?;
    for (c, r) in &reading.candidates {
        println!("{c:?}: ‖B_J‖∞ on hopf = {r:.2e}");
    }
    println!("pinned reading = {:?}", reading.unique());

    println!("heisenberg (a, b) = {:?}", pin_heisenberg_scales()?);
    println!("ledger: {}", ledger().one_line());
    Ok(())
}
