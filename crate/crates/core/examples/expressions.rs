//! Parse an expression, differentiate it symbolically and evaluate it.
//!
//! cargo run --example expressions -- "sin(x)^2 * exp(y)"

use contact_curvature::expr::{derive, parse, EvalEnv};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let src = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "sin(x)^2 * exp(y) / (2 + cos(x*y))".into());
    let e = parse(&src)?;
    println!("f        = {e}");
    println!("coords   = {:?}", e.coordinates());

    let env = EvalEnv::new().with_coord("x", 0.4).with_coord("y", -0.3);
    println!("f(0.4, -0.3)     = {:.12}", e.eval_f64(&env)?);
    for v in ["x", "y"] {
        let d = derive(&e, v);
        println!("∂f/∂{v}            = {d}");
        println!("∂f/∂{v}(0.4, -0.3) = {:.12}", d.eval_f64(&env)?);
    }

    // malformed input reports a byte offset
    if let Err(err) = parse("sin(x * (y + 1)") {
        println!("parse error at {}: {err}", err.offset());
    }
    Ok(())
}
