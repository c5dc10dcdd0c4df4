//! Second-order jets: exact gradients and Hessians in one pass, compared
//! against central differences.

use contact_curvature::expr::{parse, EvalEnv};
use contact_curvature::jet::Jet2;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let e = parse("x*y^2 + sin(x)*cos(y)")?;
    let p = [0.7, -0.2];

    let mut env = EvalEnv::new();
    for (name, j) in ["x", "y"].iter().zip(Jet2::seed_point(&p)) {
        env.set_coord(*name, j);
    }
    let f = e.eval(&env, &Jet2::constant(0.0, 2))?;
    println!("f   = {:.12}", f.val());
    println!("∇f  = {:?}", f.grad());
    println!("∇²f = {:?}", f.hess());

    let at = |x: f64, y: f64| {
        e.eval_f64(&EvalEnv::new().with_coord("x", x).with_coord("y", y))
            .unwrap()
    };
    let h = 1e-5;
    let fd_x = (at(p[0] + h, p[1]) - at(p[0] - h, p[1])) / (2.0 * h);
    let fd_y = (at(p[0], p[1] + h) - at(p[0], p[1] - h)) / (2.0 * h);
    println!("central differences: ({fd_x:.10}, {fd_y:.10})");
    println!("max gap: {:.2e}", (fd_x - f.d(0)).abs().max((fd_y - f.d(1)).abs()));
    Ok(())
}
