//! The (1,3) Bochner tensor under g → e^{2f} g, for constant and
//! coordinate-dependent f.

use contact_curvature::bochner::conformal_invariance_check;
use contact_curvature::catalog;
use contact_curvature::expr::{parse, Expr};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cp = catalog::hopf(2)?;
    for f in [Expr::Const(2f64.ln()), parse("0.05*t")?] {
        let rep = conformal_invariance_check(&cp, &f, Some(3))?;
        for r in &rep.records {
            println!("f = {f:<10} {:?} max |ΔB| = {:.2e}", r.status, r.value);
        }
    }
    Ok(())
}
