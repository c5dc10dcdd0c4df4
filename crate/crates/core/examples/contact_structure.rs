//! The structure tensors of a contact pair at one point: φ, J, T, the
//! foliation projectors and the definition checks.
//!
//! cargo run --example contact_structure -- sphere_product:1,1

use contact_curvature::catalog;
use contact_curvature::contact::{definition_records, Structure};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let addr = std::env::args().nth(1).unwrap_or_else(|| "hopf:1".into());
    let (cp, _) = catalog::resolve(&addr)?;
    let p = cp.points(Some(1)).remove(0);
    let pt = cp.at(&p)?;

    println!("{} type {:?} at {:?}", cp.id(), cp.pair_type(), p);
    println!("φ = {:.6}", pt.phi_v());
    println!("J = {:.6}", pt.structure_v(Structure::J));
    println!("‖φ² + Id − α₁⊗Z₁ − α₂⊗Z₂‖∞ = {:.2e}", pt.phi_square_defect().amax());

    let pr = pt.projectors()?;
    println!("dim T𝓕₁, T𝓕₂, H = {:?}", pr.dims);

    let mut rep = definition_records(&pt);
    rep.manifold = cp.id().into();
    print!("{}", rep.to_text());
    Ok(())
}
