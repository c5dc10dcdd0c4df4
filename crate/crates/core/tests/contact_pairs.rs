use contact_curvature::catalog::{self, pin_exterior_factor, pin_heisenberg_scales};
use contact_curvature::contact::{
    build_j_t, check_contact_pair, foliation_projectors, lemma_suite, nijenhuis, nijenhuis_tensor, star_ricci,
    synthesize_phi, ContactPairManifold, Structure,
};
use contact_curvature::conventions::{EXTERIOR_FACTOR, HEISENBERG_SCALES};
use contact_curvature::expr::{parse, EvalEnv, Expr};
use contact_curvature::jet::Jet2;
use contact_curvature::riemann::{Chart, MetricField, OneFormExpr, Tensor11Expr, VectorFieldExpr};
use contact_curvature::Error;
use nalgebra::DMatrix;

const ENTRIES: [&str; 4] = ["hopf:1", "hopf:2", "sphere_product:1,1", "heisenberg_r"];

fn entry(addr: &str) -> ContactPairManifold {
    catalog::resolve(addr).unwrap().0
}

#[test]
fn exterior_factor_pin_is_unique() {
    let pin = pin_exterior_factor().unwrap();
    assert_eq!(pin.unique(), Some(EXTERIOR_FACTOR));
    // s = 1 gives φ² = −4 on horizontal vectors
    let (_, wrong) = pin.candidates.iter().find(|(s, _)| *s == 1.0).unwrap();
    assert!((wrong - 3.0).abs() < 1e-12);
}

#[test]
fn heisenberg_scales_pin() {
    assert_eq!(pin_heisenberg_scales().unwrap(), HEISENBERG_SCALES);
    // the metric only agrees with the pair when b = a/2
    let cp = catalog::heisenberg_with(1.0, 1.0).unwrap();
    assert!(synthesize_phi(&cp, &cp.points(None)[0]).is_err());
}

#[test]
fn phi_square_and_reeb_kernel() {
    for addr in ENTRIES {
        let cp = entry(addr);
        for p in cp.points(None) {
            let phi = synthesize_phi(&cp, &p).unwrap().to_matrix();
            let pt = cp.at(&p).unwrap();
            for i in 0..2 {
                assert!((&phi * pt.reeb_v(i)).amax() < 1e-8, "{addr}");
            }
        }
    }
}

#[test]
fn foliation_dimensions() {
    let cp = entry("hopf:1");
    let p = &cp.points(None)[0];
    let pr = foliation_projectors(&cp, p).unwrap();
    assert_eq!(pr.dims, [1, 3, 2]);
    // T𝓕₁ is spanned by Z₂ = ∂t
    let z2 = cp.at(p).unwrap().reeb_v(1);
    assert!((&pr.p1 * &z2 - &z2).amax() < 1e-12);
    assert!((&pr.p1 * &pr.p2).amax() < 1e-8);
    assert!((&pr.p1 + &pr.p2 - DMatrix::identity(4, 4)).amax() < 1e-8);
}

#[test]
fn complex_structures_on_reeb_fields() {
    for addr in ENTRIES {
        let cp = entry(addr);
        let p = &cp.points(None)[1];
        let pt = cp.at(p).unwrap();
        let (j, t) = build_j_t(&cp, p).unwrap();
        let (j, t) = (j.to_matrix(), t.to_matrix());
        let (z1, z2) = (pt.reeb_v(0), pt.reeb_v(1));
        assert!((&j * &z1 - &z2).amax() < 1e-12);
        assert!((&j * &z2 + &z1).amax() < 1e-12);
        assert!((&t * &z1 + &z2).amax() < 1e-12);
        assert!((&t * &z2 - &z1).amax() < 1e-12);
        let pr = pt.projectors().unwrap();
        assert!(((&j - &t) * &pr.h).amax() < 1e-12, "J = T on H");
        assert!((&j * &z1 - &t * &z1).amax() > 1.0, "J ≠ T on Z₁");
    }
}

#[test]
fn wrong_type_fails_volume_clause() {
    let cp = entry("hopf:1").with_type(0, 1).unwrap();
    let rep = check_contact_pair(&cp, &cp.points(None)[0]).unwrap();
    let failed: Vec<&str> = rep.failures().map(|r| r.check.as_str()).collect();
    assert!(failed.iter().any(|c| c.starts_with("contact volume")), "{failed:?}");
    assert!(matches!(lemma_suite(&cp), Err(Error::StructureInvalid(_))));
    assert!(entry("hopf:1").with_type(2, 0).is_err());
}

#[test]
fn catalog_passes_contact_condition() {
    for addr in ENTRIES {
        let cp = entry(addr);
        for p in cp.points(None) {
            assert!(check_contact_pair(&cp, &p).unwrap().all_passed(), "{addr}");
        }
    }
}

fn flat_pair() -> ContactPairManifold {
    let chart = Chart::new(["x", "y", "z", "w"])
        .unwrap()
        .with_sample_points(vec![vec![0.1, 0.2, 0.3, 0.4]])
        .unwrap();
    let metric = MetricField::diagonal(&chart, vec![Expr::Const(1.0); 4]).unwrap();
    let a1 = OneFormExpr(vec![
        parse("1").unwrap(),
        parse("x").unwrap(),
        parse("0").unwrap(),
        parse("0").unwrap(),
    ]);
    let a2 = OneFormExpr(vec![
        parse("0").unwrap(),
        parse("0").unwrap(),
        parse("1").unwrap(),
        parse("y").unwrap(),
    ]);
    ContactPairManifold::new(
        "flat",
        chart,
        metric,
        a1,
        a2,
        VectorFieldExpr::coordinate(4, 0),
        VectorFieldExpr::coordinate(4, 2),
        (1, 0),
    )
    .unwrap()
}

#[test]
fn non_contact_forms_are_rejected() {
    let cp = flat_pair();
    assert!(matches!(
        synthesize_phi(&cp, &[0.1, 0.2, 0.3, 0.4]),
        Err(Error::StructureInvalid(_))
    ));
    assert!(matches!(lemma_suite(&cp), Err(Error::StructureInvalid(_))));
}

#[test]
fn normality_and_its_negative_control() {
    for addr in ENTRIES {
        let cp = entry(addr);
        for p in cp.points(None) {
            for which in [Structure::J, Structure::T] {
                assert!(nijenhuis(&cp, &p, which).unwrap().max_abs() < 1e-7, "{addr}");
            }
        }
    }
    let mut delta = vec![Expr::Const(0.0); 16];
    delta[1] = parse("0.1*eta").unwrap();
    let bad = entry("hopf:1").with_phi_perturbation(Tensor11Expr(delta));
    for p in bad.points(None) {
        assert!(nijenhuis(&bad, &p, Structure::J).unwrap().max_abs() > 1e-3);
    }
}

fn structure_jets(p: &[f64], entries: impl Fn(usize, usize) -> Expr) -> Vec<Jet2> {
    let names = ["x", "y", "u", "v"];
    let mut env = EvalEnv::new();
    for (n, j) in names.iter().zip(Jet2::seed_point(p)) {
        env.set_coord(*n, j);
    }
    let proto = Jet2::constant(0.0, 4);
    (0..16)
        .map(|i| entries(i / 4, i % 4).eval(&env, &proto).unwrap())
        .collect()
}

#[test]
fn standard_complex_structure_is_integrable() {
    // J∂x = ∂y, J∂u = ∂v on ℂ²
    let p = [0.3, -0.2, 0.5, 0.1];
    let std = |k: usize, j: usize| {
        Expr::Const(match (k, j) {
            (1, 0) | (3, 2) => 1.0,
            (0, 1) | (2, 3) => -1.0,
            _ => 0.0,
        })
    };
    assert_eq!(nijenhuis_tensor(&structure_jets(&p, std), &p).max_abs(), 0.0);
    // A J₀ A⁻¹ with A = I + f E₂₀ and f = u/2: the (1,0)-form du + i dv − f dx
    // has a (0,2) part in its differential
    let twisted = |k: usize, j: usize| match (k, j) {
        (1, 0) | (3, 2) => Expr::Const(1.0),
        (0, 1) | (2, 3) => Expr::Const(-1.0),
        (2, 1) | (3, 0) => parse("-0.5*u").unwrap(),
        _ => Expr::Const(0.0),
    };
    let jj = structure_jets(&p, twisted);
    let jm = DMatrix::from_fn(4, 4, |r, c| jj[r * 4 + c].val());
    assert!((&jm * &jm + DMatrix::identity(4, 4)).amax() < 1e-12);
    assert!(nijenhuis_tensor(&jj, &p).max_abs() > 1e-2);
}

#[test]
fn lemma_suite_passes_on_catalog() {
    for addr in ENTRIES {
        let rep = lemma_suite(&entry(addr)).unwrap();
        let failed: Vec<String> = rep
            .failures()
            .map(|r| format!("{} {:e}", r.check, r.residual))
            .collect();
        assert!(failed.is_empty(), "{addr}: {failed:?}");
    }
}

#[test]
fn sphere_product_ricci_values() {
    let rep = lemma_suite(&entry("sphere_product:1,1")).unwrap();
    for (check, want) in [("ρ₁₁ = 2m", 2.0), ("ρ₂₂ = 2n", 2.0), ("τ − τ* = 4(m² + n²)", 8.0)] {
        let recs: Vec<_> = rep.find(check).collect();
        assert_eq!(recs.len(), 5);
        for r in recs {
            assert!((r.value - want).abs() < 1e-7, "{check}: {}", r.value);
        }
    }
}

#[test]
fn star_ricci_on_hopf() {
    for m in [1, 2] {
        let cp = catalog::hopf(m).unwrap();
        for p in cp.points(None) {
            let pt = cp.at(&p).unwrap();
            let rs = star_ricci(&cp, &p).unwrap();
            let (z1, z2) = (pt.reeb_v(0), pt.reeb_v(1));
            assert!(rs.apply2(&z1, &z1).abs() < 1e-9);
            assert!(rs.apply2(&z2, &z2).abs() < 1e-9);
            assert!(rs.apply2(&z1, &z2).abs() < 1e-9);
            let pr = pt.projectors().unwrap();
            for x in pt.leaf_horizontal_vectors(&pr) {
                assert!((rs.apply2(&x, &x) - 1.0).abs() < 1e-9);
                assert!((pt.geometry.ricci_on(&x, &x) - 2.0 * m as f64).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn star_ricci_frame_independent() {
    let cp = entry("heisenberg_r");
    let p = cp.points(None)[0].clone();
    let pt = cp.at(&p).unwrap();
    let a = pt.star_ricci_with(Structure::J, &pt.frame().unwrap());
    let b = pt.star_ricci_with(Structure::J, &pt.geometry.orthonormal_frame(&[]).unwrap());
    assert!(a.max_diff(&b) < 1e-9);
}

#[test]
fn swapping_exchanges_the_type() {
    let cp = entry("sphere_product:1,1").swapped();
    assert_eq!(cp.pair_type(), (1, 1));
    assert!(lemma_suite(&cp).unwrap().all_passed());
    let h = entry("hopf:1").swapped();
    assert_eq!(h.pair_type(), (0, 1));
    assert!(lemma_suite(&h).unwrap().all_passed());
}
