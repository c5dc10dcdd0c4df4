//! Riemann, Ricci and scalar curvature of round spheres and a rescaled
//! sphere, against the constant-curvature values.

use contact_curvature::catalog;
use contact_curvature::expr::Expr;
use contact_curvature::riemann::{conformal_rescale, PointGeometry};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for d in 2..=5 {
        let (chart, metric) = catalog::round_sphere(d)?;
        let p = &chart.sample_points()[0];
        let pg = PointGeometry::compute(&chart, &metric, p)?;
        println!(
            "S^{d}: τ = {:.12} (expected {}), ‖W‖∞ = {:.1e}",
            pg.scalar,
            d * (d - 1),
            if d >= 4 { pg.weyl()?.max_abs() } else { 0.0 }
        );
    }

    // radius 3: sectional curvature 1/9
    let (chart, metric) = catalog::round_sphere(3)?;
    let big = conformal_rescale(&chart, &metric, &Expr::Const(3f64.ln()))?;
    let pg = PointGeometry::compute(&chart, &big, &chart.sample_points()[0])?;
    println!("S^3(3): τ = {:.12} (expected {:.12})", pg.scalar, 6.0 / 9.0);
    Ok(())
}
