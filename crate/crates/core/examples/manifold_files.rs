//! Export a catalog entry to a definition file, edit it, and load it back.

use contact_curvature::catalog;
use contact_curvature::contact::validate;
use contact_curvature::manifold_file::{load, save, ManifoldFile};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join("contact-curvature-example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("hopf1.manifold");

    let (cp, _) = catalog::resolve("hopf:1")?;
    save(&cp, &path)?;
    println!("{}", std::fs::read_to_string(&path)?);

    let back = load(&path)?;
    println!(
        "reloaded: all definition checks pass = {}",
        validate(&back, None)?.all_passed()
    );

    // scale Z₁ so that α₁(Z₁) = 0.9
    let mut file = ManifoldFile::read(&path)?;
    file.z1 = vec!["0".into(), "0.9".into(), "0.9".into(), "0".into()];
    let broken = file.build("broken")?;
    let rep = validate(&broken, Some(1))?;
    for r in rep.failures() {
        println!("FAIL {} ({}) residual {:.3}", r.check, r.anchor, r.residual);
    }
    Ok(())
}
