//! Nijenhuis tensors of J and T on a normal pair, and on the same pair
//! with φ perturbed off the normal locus.

use contact_curvature::catalog;
use contact_curvature::contact::Structure;
use contact_curvature::expr::{parse, Expr};
use contact_curvature::riemann::Tensor11Expr;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cp = catalog::hopf(1)?;
    let p = cp.points(Some(1)).remove(0);
    let pt = cp.at(&p)?;
    for which in [Structure::J, Structure::T] {
        println!("hopf:1 ‖N_{which:?}‖∞ = {:.2e}", pt.nijenhuis(which).max_abs());
    }

    let mut delta = vec![Expr::Const(0.0); 16];
    delta[1] = parse("0.1*eta")?;
    let bad = cp.with_phi_perturbation(Tensor11Expr(delta));
    println!(
        "perturbed ‖N_J‖∞ = {:.3}",
        bad.at(&p)?.nijenhuis(Structure::J).max_abs()
    );
    Ok(())
}
