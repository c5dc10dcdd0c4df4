//! A verification report in text and JSON form.
//!
//! cargo run --example reports -- sphere_product:1,1 theorem1

use contact_curvature::catalog;
use contact_curvature::verify::{run, Suite};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let addr = args.next().unwrap_or_else(|| "hopf:2".into());
    let suite: Suite = args.next().unwrap_or_else(|| "theorem2".into()).parse()?;
    let (cp, expect) = catalog::resolve(&addr)?;
    let rep = run(&cp, Some(&expect), suite, Some(1))?;
    print!("{}", rep.to_text());
    let json = rep.to_json();
    println!("JSON: {} bytes, first record:", json.len());
    let v: serde_json::Value = serde_json::from_str(&json)?;
    println!("{}", serde_json::to_string_pretty(&v["records"][0])?);
    Ok(())
}
