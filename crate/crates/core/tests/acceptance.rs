//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines print in order; exits non-zero on any failure.

#![allow(clippy::needless_range_loop)]

mod common;

use std::process::ExitCode;

use common::{eval_jet, finite_differences, random_expr, rel_err};
use contact_curvature::bochner::{
    bochner, bochner_pair_at, conformal_invariance_check, pin_notation_reading, CurvatureContext, Regime,
};
use contact_curvature::catalog::{self, pin_exterior_factor, reeb_bochner_closed_form};
use contact_curvature::contact::{lemma_suite, phi_sectional, ContactPairManifold, Structure};
use contact_curvature::conventions::{NotationReading, EXTERIOR_FACTOR, NOTATION_READING};
use contact_curvature::expr::Expr;
use contact_curvature::report::{Report, Status};
use contact_curvature::riemann::PointGeometry;
use contact_curvature::tensor::curvature_symmetries;
use contact_curvature::verify::{self, Suite};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(bool, String), Box<dyn std::error::Error>>;

fn entry(addr: &str) -> ContactPairManifold {
    catalog::resolve(addr).expect("catalog entry").0
}

/// Largest value of `f` over the sample points of `cp`.
fn worst_at<F>(cp: &ContactPairManifold, mut f: F) -> Result<f64, Box<dyn std::error::Error>>
where
    F: FnMut(&contact_curvature::contact::ContactPoint) -> Result<f64, Box<dyn std::error::Error>>,
{
    let mut worst = 0.0f64;
    for p in cp.points(None) {
        worst = worst.max(f(&cp.at(&p)?)?);
    }
    Ok(worst)
}

fn lemma_suite_green() -> Outcome {
    let gaps = [
        ("hopf:1", 1.0, 0.0, 4.0),
        ("hopf:2", 2.0, 0.0, 16.0),
        ("sphere_product:1,1", 1.0, 1.0, 8.0),
        ("heisenberg_r", 1.0, 0.0, 4.0),
    ];
    let mut ok = true;
    let mut worst = 0.0f64;
    let mut notes = Vec::new();
    for (addr, m, n, gap) in gaps {
        let cp = entry(addr);
        let rep = lemma_suite(&cp)?;
        let fails = rep.failures().count();
        ok &= fails == 0 && !rep.records.is_empty();
        worst = worst.max(
            rep.records
                .iter()
                .filter(|r| r.status != Status::Info)
                .fold(0.0, |a, r| a.max(r.residual)),
        );
        let w = worst_at(&cp, |pt| {
            let (z1, z2) = (pt.reeb_v(0), pt.reeb_v(1));
            let g = &pt.geometry;
            let rs = pt.star_ricci()?;
            let errs = [
                g.scalar - pt.star_scalar()? - gap,
                g.ricci_on(&z1, &z1) - 2.0 * m,
                g.ricci_on(&z2, &z2) - 2.0 * n,
                g.ricci_on(&z1, &z2),
                rs.apply2(&z1, &z1),
                rs.apply2(&z2, &z2),
                rs.apply2(&z1, &z2),
                g.riemann_on(&z1, &z2, &z2, &z1),
            ];
            Ok(errs.iter().fold(0.0f64, |a, e| a.max(e.abs())))
        })?;
        ok &= w < 1e-7;
        worst = worst.max(w);
        notes.push(format!("{addr} {} records", rep.records.len()));
    }
    Ok((ok, format!("worst residual {worst:.2e} < 1e-7 ({})", notes.join(", "))))
}

fn hopf_scalar_curvature() -> Outcome {
    let mut ok = true;
    let mut worst = 0.0f64;
    for (m, tau) in [(1, 6.0), (2, 20.0)] {
        let w = worst_at(&catalog::hopf(m)?, |pt| Ok((pt.geometry.scalar - tau).abs()))?;
        ok &= w < 1e-7;
        worst = worst.max(w);
    }
    Ok((ok, format!("τ = 6, 20 within {worst:.2e} (tol 1e-7)")))
}

fn hopf_bochner_flat() -> Outcome {
    let h2 = worst_at(&catalog::hopf(2)?, |pt| Ok(bochner_pair_at(pt)?.0.max_abs()))?;
    let h1 = worst_at(&catalog::hopf(1)?, |pt| Ok(bochner_pair_at(pt)?.0.max_abs()))?;
    let h1_reeb = worst_at(&catalog::hopf(1)?, |pt| {
        let ctx = CurvatureContext::from_contact(pt, Structure::J)?;
        let b = bochner(&ctx, Regime::Dim4)?;
        Ok(b.apply4(&pt.reeb_v(0), &pt.reeb_v(1), &pt.reeb_v(1), &pt.reeb_v(0))
            .abs())
    })?;
    let ok = NOTATION_READING == NotationReading::ContractBracket && h2 < 1e-6 && h1 < 1e-6 && h1_reeb < 1e-7;
    Ok((
        ok,
        format!(
            "‖B_J‖∞ hopf(2) {h2:.2e}, hopf(1) {h1:.2e} (tol 1e-6); |B_J(Z₁,Z₂,Z₂,Z₁)| hopf(1) {h1_reeb:.2e} (tol 1e-7)"
        ),
    ))
}

fn hopf_stage_one_values() -> Outcome {
    let mut ok = true;
    let mut worst = 0.0f64;
    let mut tested = 0;
    for m in [1, 2] {
        let cp = catalog::hopf(m)?;
        let w = worst_at(&cp, |pt| {
            let pr = pt.projectors()?;
            let xs = pt.leaf_horizontal_vectors(&pr);
            tested += xs.len();
            let rs = pt.star_ricci()?;
            let mut e = 0.0f64;
            for x in &xs {
                e = e.max((pt.geometry.ricci_on(x, x) - 2.0 * m as f64).abs());
                e = e.max((rs.apply2(x, x) - 1.0).abs());
            }
            for k in phi_sectional(pt)? {
                e = e.max((k - 1.0).abs());
            }
            Ok(if xs.is_empty() { f64::INFINITY } else { e })
        })?;
        ok &= w < 1e-7;
        worst = worst.max(w);
    }
    Ok((
        ok,
        format!("ρ(X,X) = 2m, ρ*(X,X) = 1, R(X,φX,φX,X) = 1 on {tested} vectors, worst {worst:.2e} (tol 1e-7)"),
    ))
}

fn weyl_max(cp: &ContactPairManifold) -> Result<(f64, f64), Box<dyn std::error::Error>> {
    let mut hi = 0.0f64;
    let mut lo = f64::INFINITY;
    for p in cp.points(None) {
        let w = cp.at(&p)?.geometry.weyl()?.max_abs();
        hi = hi.max(w);
        lo = lo.min(w);
    }
    Ok((hi, lo))
}

fn conformal_flatness() -> Outcome {
    let (h1, _) = weyl_max(&catalog::hopf(1)?)?;
    let (h2, _) = weyl_max(&catalog::hopf(2)?)?;
    let (_, heis) = weyl_max(&entry("heisenberg_r"))?;
    Ok((
        h1 < 1e-8 && h2 < 1e-8 && heis > 1e-2,
        format!("‖W‖∞ hopf(1) {h1:.2e}, hopf(2) {h2:.2e} (tol 1e-8); heisenberg_r min {heis:.3e} (> 1e-2)"),
    ))
}

fn negative_controls() -> Outcome {
    let heis = entry("heisenberg_r");
    let mut heis_min = f64::INFINITY;
    for p in heis.points(None) {
        heis_min = heis_min.min(bochner_pair_at(&heis.at(&p)?)?.0.max_abs());
    }
    let sp = entry("sphere_product:1,1");
    let (m, n) = sp.pair_type();
    let mut worst = 0.0f64;
    let mut cross = 0.0f64;
    for p in sp.points(None) {
        let pt = sp.at(&p)?;
        let (bj, _) = bochner_pair_at(&pt)?;
        let v = bj.apply4(&pt.reeb_v(0), &pt.reeb_v(1), &pt.reeb_v(1), &pt.reeb_v(0));
        worst = worst.max((v + 0.1).abs());
        cross = cross.max((v - reeb_bochner_closed_form(m as f64, n as f64, pt.geometry.scalar)).abs());
    }
    Ok((
        heis_min > 1e-2 && worst < 1e-6 && cross < 1e-6,
        format!("heisenberg_r ‖B_J‖∞ ≥ {heis_min:.3e}; sphere_product B_J(Z₁,Z₂,Z₂,Z₁) + 0.1 = {worst:.2e}, closed form gap {cross:.2e} (tol 1e-6)"),
    ))
}

fn remark_and_swap() -> Outcome {
    let sp = entry("sphere_product:1,1");
    let swapped = sp.swapped();
    let mut remark = 0.0f64;
    let mut swap = 0.0f64;
    let mut tested = 0;
    for p in sp.points(None) {
        let pt = sp.at(&p)?;
        let (bj, bt) = bochner_pair_at(&pt)?;
        let pr = pt.projectors()?;
        let j = pt.structure_v(Structure::J);
        let (z1, z2) = (pt.reeb_v(0), pt.reeb_v(1));
        for a in 0..pt.dim() {
            let e = nalgebra::DVector::from_fn(pt.dim(), |k, _| if k == a { 1.0 } else { 0.0 });
            let x = &pr.h * e;
            if pt.geometry.norm(&x) < 1e-6 {
                continue;
            }
            let jx = &j * &x;
            tested += 1;
            remark = remark.max((bt.apply4(&x, &jx, &z1, &z2) + bj.apply4(&x, &jx, &z1, &z2)).abs());
        }
        let (sj, st) = bochner_pair_at(&swapped.at(&p)?)?;
        swap = swap.max(sj.max_diff(&bt)).max(st.max_diff(&bj));
    }
    Ok((
        tested > 0 && remark < 1e-7 && swap < 1e-7,
        format!("B_T + B_J on (X,JX,Z₁,Z₂) {remark:.2e} over {tested} X; α₁↔α₂ swap gap {swap:.2e} (tol 1e-7)"),
    ))
}

fn conformal_constant() -> Outcome {
    let rep = conformal_invariance_check(&catalog::hopf(2)?, &Expr::Const(2f64.ln()), None)?;
    let worst = rep.records.iter().fold(0.0f64, |a, r| a.max(r.residual));
    Ok((
        !rep.records.is_empty() && rep.all_passed(),
        format!("hopf(2) g → 4g, (1,3) B_J gap {worst:.2e} (tol 1e-7)"),
    ))
}

fn numerical_infrastructure() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let mut jet_worst = 0.0f64;
    for _ in 0..100 {
        let e = random_expr(&mut rng, 4);
        let p: Vec<f64> = (0..3).map(|_| rng.random_range(-0.9..0.9)).collect();
        let jet = eval_jet(&e, &p);
        let (g, h) = finite_differences(&e, &p);
        for i in 0..3 {
            jet_worst = jet_worst.max(rel_err(jet.d(i), g[i]));
        }
        for k in 0..9 {
            jet_worst = jet_worst.max(rel_err(jet.hess()[k], h[k]));
        }
    }
    let mut sym = 0.0f64;
    for info in catalog::entries() {
        sym = sym.max(worst_at(&entry(&info.address), |pt| {
            Ok(curvature_symmetries(&pt.geometry.riemann).worst())
        })?);
    }
    let mut flat = 0.0f64;
    for d in 2..=6 {
        let (chart, metric) = catalog::flat(d)?;
        for p in chart.sample_points() {
            let pg = PointGeometry::compute(&chart, &metric, p)?;
            flat = flat
                .max(pg.riemann.max_abs())
                .max(pg.ricci.max_abs())
                .max(pg.scalar.abs());
        }
    }
    let mut sphere = 0.0f64;
    for d in 2..=5 {
        let (chart, metric) = catalog::round_sphere(d)?;
        for p in chart.sample_points() {
            let pg = PointGeometry::compute(&chart, &metric, p)?;
            sphere = sphere.max((pg.scalar - (d * (d - 1)) as f64).abs());
        }
    }
    Ok((
        jet_worst < 1e-4 && sym < 1e-9 && flat < 1e-12 && sphere < 1e-8,
        format!(
            "jet vs FD {jet_worst:.2e} (tol 1e-4, 100 exprs); symmetries {sym:.2e} (tol 1e-9); flat {flat:.2e} (tol 1e-12); sphere τ {sphere:.2e} (tol 1e-8)"
        ),
    ))
}

fn convention_pins() -> Outcome {
    let s = pin_exterior_factor()?;
    let reading = pin_notation_reading(1e-6)?;
    let mut emitted = true;
    for addr in ["hopf:1", "sphere_product:1,1"] {
        let (cp, e) = catalog::resolve(addr)?;
        let rep: Report = verify::run(&cp, Some(&e), Suite::Definitions, Some(1))?;
        let json: serde_json::Value = serde_json::from_str(&rep.to_json())?;
        emitted &= json["conventions"]["exterior_factor"].as_f64() == Some(EXTERIOR_FACTOR)
            && json["conventions"]["notation_reading"] == "contract-bracket";
        emitted &= rep.to_text().contains(&rep.conventions.one_line());
    }
    let ok = s.unique() == Some(EXTERIOR_FACTOR) && reading.unique() == Some(NOTATION_READING) && emitted;
    let fmt = |c: &[(String, f64)]| {
        c.iter()
            .map(|(k, v)| format!("{k}: {v:.1e}"))
            .collect::<Vec<_>>()
            .join(", ")
    };
    let sc: Vec<(String, f64)> = s.candidates.iter().map(|(k, v)| (format!("s={k}"), *v)).collect();
    let rc: Vec<(String, f64)> = reading.candidates.iter().map(|(k, v)| (format!("{k:?}"), *v)).collect();
    Ok((
        ok,
        format!(
            "φ² residual [{}]; ‖B_J‖∞ [{}]; ledger emitted: {emitted}",
            fmt(&sc),
            fmt(&rc)
        ),
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("lemma suite on the catalog", lemma_suite_green),
        ("scalar curvature of hopf(m)", hopf_scalar_curvature),
        ("Bochner flatness of hopf(m)", hopf_bochner_flat),
        ("Ricci values on horizontal leaf vectors", hopf_stage_one_values),
        ("conformal flatness", conformal_flatness),
        ("negative controls", negative_controls),
        ("B_T against B_J and α₁↔α₂ relabeling", remark_and_swap),
        ("conformal invariance, constant factor", conformal_constant),
        ("numerical infrastructure", numerical_infrastructure),
        ("convention pins", convention_pins),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let (ok, detail) = match f() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            failed += 1;
        }
        println!("[{}] {:>2}. {name}: {detail}", if ok { "PASS" } else { "FAIL" }, i + 1);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
