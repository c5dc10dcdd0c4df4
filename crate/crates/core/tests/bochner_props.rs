//! Algebraic properties of the Bochner building blocks on catalog points.

use contact_curvature::bochner::{
    bochner, bochner_pair_at, conformal_invariance_check, conformal_pair, contract_ricci, contract_star, l3, phi_op,
    pi1, pi2, psi_op, trace, CurvatureContext, Regime,
};
use contact_curvature::catalog;
use contact_curvature::contact::{ContactPairManifold, Structure};
use contact_curvature::expr::Expr;
use contact_curvature::report::Status;
use contact_curvature::tensor::{curvature_symmetries, TensorValue, Variance};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ENTRIES: [&str; 4] = ["hopf:1", "hopf:2", "sphere_product:1,1", "heisenberg_r:1"];

fn entry(addr: &str) -> ContactPairManifold {
    catalog::resolve(addr).unwrap().0
}

fn contexts(addr: &str) -> Vec<CurvatureContext> {
    let cp = entry(addr);
    let mut out = Vec::new();
    for p in cp.points(Some(2)) {
        let pt = cp.at(&p).unwrap();
        for which in [Structure::J, Structure::T] {
            out.push(CurvatureContext::from_contact(&pt, which).unwrap());
        }
    }
    out
}

fn metric_tensor(ctx: &CurvatureContext) -> TensorValue {
    TensorValue::from_matrix(&ctx.g, [Variance::Down, Variance::Down], &ctx.point)
}

#[test]
fn pi_tensors_are_algebraic_curvature_tensors() {
    for addr in ENTRIES {
        for ctx in contexts(addr) {
            assert!(curvature_symmetries(&pi1(&ctx)).worst() < 1e-12, "{addr}");
            assert!(curvature_symmetries(&pi2(&ctx)).worst() < 1e-12, "{addr}");
            // both are J-invariant
            assert!(l3(&ctx, &pi1(&ctx)).max_diff(&pi1(&ctx)) < 1e-12);
            assert!(l3(&ctx, &pi2(&ctx)).max_diff(&pi2(&ctx)) < 1e-12);
        }
    }
}

#[test]
fn operators_on_the_metric() {
    for addr in ENTRIES {
        for ctx in contexts(addr) {
            let g = metric_tensor(&ctx);
            assert!(phi_op(&g, &ctx).max_diff(&pi1(&ctx).scale(2.0)) < 1e-12, "{addr}");
            assert!(psi_op(&g, &ctx).max_diff(&pi2(&ctx).scale(2.0)) < 1e-12, "{addr}");
            let d = ctx.dim() as f64;
            assert!((trace(&g, &ctx) - d).abs() < 1e-12);
        }
    }
}

#[test]
fn contractions_match_direct_curvature() {
    for addr in ENTRIES {
        let cp = entry(addr);
        for p in cp.points(Some(2)) {
            let pt = cp.at(&p).unwrap();
            let ctx = CurvatureContext::from_contact(&pt, Structure::J).unwrap();
            let rho = contract_ricci(&ctx.riemann, &ctx);
            assert!(rho.max_diff(&pt.geometry.ricci) < 1e-9, "{addr}");
            let star = contract_star(&ctx.riemann, &ctx);
            assert!(star.max_diff(&pt.star_ricci().unwrap()) < 1e-9, "{addr}");
            assert!((trace(&rho, &ctx) - pt.geometry.scalar).abs() < 1e-9);
            // ρ(π₁) = −(d−1)g under R(X,Y,Y,X) = +1 for π₁ = −R
            let d = ctx.dim() as f64;
            let want = metric_tensor(&ctx).scale(-(d - 1.0));
            assert!(contract_ricci(&pi1(&ctx), &ctx).max_diff(&want) < 1e-12);
        }
    }
}

#[test]
fn bochner_is_linear_in_curvature_with_matching_traces() {
    // B(2R) = 2B(R): all contractions and traces scale together
    let cp = entry("sphere_product:1,1");
    let p = &cp.points(Some(1))[0];
    let ctx = CurvatureContext::from_contact(&cp.at(p).unwrap(), Structure::J).unwrap();
    let b = bochner(&ctx, Regime::General).unwrap();
    let doubled = ctx.with_riemann(ctx.riemann.scale(2.0));
    let b2 = bochner(&doubled, Regime::General).unwrap();
    assert!(b2.max_diff(&b.scale(2.0)) < 1e-12);
}

fn random_rotation(rng: &mut ChaCha8Rng, d: usize) -> DMatrix<f64> {
    let a = DMatrix::from_fn(d, d, |_, _| rng.random_range(-1.0..1.0));
    a.qr().q()
}

#[test]
fn bochner_is_frame_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for addr in ENTRIES {
        for ctx in contexts(addr) {
            let d = ctx.dim();
            let b = bochner(&ctx, Regime::for_dim(d)).unwrap();
            let q = random_rotation(&mut rng, d);
            let frame: Vec<DVector<f64>> = (0..d)
                .map(|i| (0..d).fold(DVector::zeros(d), |acc, k| acc + &ctx.frame[k] * q[(k, i)]))
                .collect();
            let rotated = ctx.clone().with_frame(frame).unwrap();
            let b2 = bochner(&rotated, Regime::for_dim(d)).unwrap();
            assert!(b2.max_diff(&b) < 1e-8, "{addr}: {:e}", b2.max_diff(&b));
        }
    }
}

#[test]
fn bochner_tensors_have_curvature_symmetries() {
    for addr in ENTRIES {
        let cp = entry(addr);
        for p in cp.points(Some(2)) {
            let (bj, bt) = bochner_pair_at(&cp.at(&p).unwrap()).unwrap();
            assert!(curvature_symmetries(&bj).worst() < 1e-8, "{addr}");
            assert!(curvature_symmetries(&bt).worst() < 1e-8, "{addr}");
        }
    }
}

#[test]
fn hopf_curvature_is_not_j_invariant() {
    // the bracketed tensors R ∓ L₃R differ, so the contraction reading matters
    let cp = entry("hopf:1");
    let pt = cp.at(&cp.points(Some(1))[0]).unwrap();
    let ctx = CurvatureContext::from_contact(&pt, Structure::J).unwrap();
    assert!(ctx.riemann.max_diff(&l3(&ctx, &ctx.riemann)) > 0.1);
}

#[test]
fn bochner_flat_entries() {
    for addr in ["hopf:1", "hopf:2"] {
        let cp = entry(addr);
        for p in cp.points(None) {
            let (bj, _) = bochner_pair_at(&cp.at(&p).unwrap()).unwrap();
            assert!(bj.max_abs() < 1e-6, "{addr}: {:e}", bj.max_abs());
        }
    }
}

#[test]
fn zero_conformal_factor_changes_nothing() {
    let cp = entry("hopf:1");
    let p = &cp.points(Some(1))[0];
    let (b, b2) = conformal_pair(&cp, &Expr::Const(0.0), p, Structure::J).unwrap();
    assert_eq!(b, b2);
}

#[test]
fn constant_conformal_factor_is_asserted() {
    let cp = entry("sphere_product:1,1");
    let rep = conformal_invariance_check(&cp, &Expr::Const(2f64.ln()), Some(2)).unwrap();
    assert!(!rep.records.is_empty());
    assert!(rep.records.iter().all(|r| r.status == Status::Pass));
}
