//! Suites of checks run against a manifold: definitions, curvature
//! identities, and the Bochner-flatness and conformal-flatness
//! consequences on the catalog's model spaces.

use std::str::FromStr;

use nalgebra::DVector;

use crate::bochner::{bochner_pair_at, conformal_invariance_check};
use crate::catalog::{reeb_bochner_closed_form, Expectations};
use crate::contact::{lemma_records, phi_sectional, validate, ContactPairManifold, Structure, LEMMA_TOL};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::report::{CheckRecord, Report};

/// `‖B‖∞` on a Bochner-flat model.
pub const BOCHNER_FLAT_TOL: f64 = 1e-6;
/// `B(Z₁,Z₂,Z₂,Z₁)` on a Bochner-flat model.
pub const BOCHNER_REEB_TOL: f64 = 1e-7;
/// `B(Z₁,Z₂,Z₂,Z₁)` against its closed form on non-flat entries.
pub const BOCHNER_VALUE_TOL: f64 = 1e-6;
pub const WEYL_FLAT_TOL: f64 = 1e-8;
/// Lower bound on `‖B‖∞`, `‖W‖∞` for entries that are not flat.
pub const NONFLAT_FLOOR: f64 = 1e-2;
pub const BOCHNER_SYMMETRY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Definitions,
    Lemmas,
    Theorem1,
    Theorem2,
    All,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "definitions" => Suite::Definitions,
            "lemmas" => Suite::Lemmas,
            "theorem1" => Suite::Theorem1,
            "theorem2" => Suite::Theorem2,
            "all" => Suite::All,
            _ => return Err(Error::Unsupported(format!("unknown suite `{s}`"))),
        })
    }
}

/// Runs `suite`. The theorem suites need the expected-results table.
pub fn run(
    cp: &ContactPairManifold,
    expect: Option<&Expectations>,
    suite: Suite,
    points: Option<usize>,
) -> Result<Report> {
    let needs_table = matches!(suite, Suite::Theorem1 | Suite::Theorem2 | Suite::All);
    let expect = match (expect, needs_table) {
        (Some(e), _) => Some(e),
        (None, false) => None,
        (None, true) => {
            return Err(Error::Unsupported(format!(
                "`{}` has no expected-results table; only the definitions and lemmas suites apply",
                cp.id()
            )))
        }
    };
    let mut rep = Report::new(cp.id());
    let defs = validate(cp, points)?;
    let valid = defs.all_passed();
    if matches!(suite, Suite::Definitions | Suite::All) {
        rep.extend(defs.clone());
    }
    if !valid {
        if !matches!(suite, Suite::Definitions | Suite::All) {
            rep.extend(defs);
        }
        return Ok(rep);
    }
    if matches!(suite, Suite::Lemmas | Suite::All) {
        for p in cp.points(points) {
            rep.extend(lemma_records(&cp.at(&p)?)?);
        }
    }
    if let Some(e) = expect {
        if matches!(suite, Suite::Theorem1 | Suite::All) {
            rep.extend(bochner_suite(cp, e, points)?);
        }
        if matches!(suite, Suite::Theorem2 | Suite::All) {
            rep.extend(conformal_suite(cp, e, points)?);
        }
    }
    Ok(rep)
}

/// Bochner-flatness consequences (or their failure on non-flat entries).
pub fn bochner_suite(cp: &ContactPairManifold, e: &Expectations, points: Option<usize>) -> Result<Report> {
    let mut rep = Report::new(cp.id());
    let (m, n) = cp.pair_type();
    let (mf, nf) = (m as f64, n as f64);
    let swapped = cp.swapped();
    for p in cp.points(points) {
        let at = Some(p.as_slice());
        let pt = cp.at(&p)?;
        let geo = &pt.geometry;
        let (bj, bt) = bochner_pair_at(&pt)?;
        let (z1, z2) = (pt.reeb_v(0), pt.reeb_v(1));
        let reeb = bj.apply4(&z1, &z2, &z2, &z1);
        let norm = bj.max_abs();

        let sym = crate::tensor::curvature_symmetries(&bj);
        rep.push(CheckRecord::residual(
            "B_J antisymmetric in each pair",
            "bochner-symmetries",
            at,
            sym.antisym_first.max(sym.antisym_last),
            BOCHNER_SYMMETRY_TOL,
        ));
        if e.bochner_flat {
            rep.push(CheckRecord::residual(
                "‖B_J‖∞ = 0",
                "bochner-flat-model",
                at,
                norm,
                BOCHNER_FLAT_TOL,
            ));
            rep.push(CheckRecord::value(
                "B_J(Z₁,Z₂,Z₂,Z₁) = 0",
                "bochner-flat-model",
                at,
                reeb,
                0.0,
                BOCHNER_REEB_TOL,
            ));
            rep.push(CheckRecord::info("‖B_T‖∞", "bochner-flat-model", at, bt.max_abs()));
        } else {
            rep.push(CheckRecord::exceeds(
                "‖B_J‖∞ (not Bochner-flat)",
                "bochner-negative-control",
                at,
                norm,
                NONFLAT_FLOOR,
            ));
            let closed = reeb_bochner_closed_form(mf, nf, geo.scalar);
            rep.push(CheckRecord::value(
                "B_J(Z₁,Z₂,Z₂,Z₁) against its closed form in τ",
                "bochner-reeb-closed-form",
                at,
                reeb,
                closed,
                BOCHNER_VALUE_TOL,
            ));
            if let Some(v) = e.bochner_reeb {
                rep.push(CheckRecord::value(
                    "B_J(Z₁,Z₂,Z₂,Z₁)",
                    "bochner-negative-control",
                    at,
                    reeb,
                    v,
                    BOCHNER_VALUE_TOL,
                ));
            }
        }

        if let Some(tau) = e.scalar {
            rep.push(CheckRecord::value(
                "τ",
                "model-scalar-curvature",
                at,
                geo.scalar,
                tau,
                LEMMA_TOL,
            ));
        }
        if n == 0 && e.bochner_flat {
            let hopf_tau = 2.0 * mf * (2.0 * mf + 1.0) + 2.0 * nf * (2.0 * nf + 1.0) + 2.0 * mf * nf;
            rep.push(CheckRecord::value(
                "τ = 2m(2m+1) + 2n(2n+1) + 2mn",
                "model-scalar-curvature",
                at,
                geo.scalar,
                hopf_tau,
                LEMMA_TOL,
            ));
        }

        let pr = pt.projectors()?;
        let xs = pt.leaf_horizontal_vectors(&pr);
        let jm = pt.structure_v(Structure::J);
        let star = pt.star_ricci()?;
        let sect = phi_sectional(&pt)?;
        for (x, k) in xs.iter().zip(&sect) {
            let jx: DVector<f64> = &jm * x;
            let remark = bt.apply4(x, &jx, &z1, &z2) + bj.apply4(x, &jx, &z1, &z2);
            rep.push(CheckRecord::residual(
                "B_T(X,JX,Z₁,Z₂) = −B_J(X,JX,Z₁,Z₂)",
                "bochner-pair-remark",
                at,
                remark.abs(),
                LEMMA_TOL,
            ));
            if e.bochner_flat {
                rep.push(CheckRecord::value(
                    "ρ(X,X) = 2m",
                    "model-ricci-values",
                    at,
                    geo.ricci_on(x, x),
                    2.0 * mf,
                    LEMMA_TOL,
                ));
                rep.push(CheckRecord::value(
                    "ρ*(X,X) = 1",
                    "model-ricci-values",
                    at,
                    star.apply2(x, x),
                    1.0,
                    LEMMA_TOL,
                ));
            }
            match e.phi_sectional {
                Some(v) => rep.push(CheckRecord::value(
                    "R(X,φX,φX,X)",
                    "phi-sectional-curvature",
                    at,
                    *k,
                    v,
                    LEMMA_TOL,
                )),
                None => rep.push(CheckRecord::info("R(X,φX,φX,X)", "phi-sectional-curvature", at, *k)),
            }
        }

        let spt = swapped.at(&p)?;
        let (sj, st) = bochner_pair_at(&spt)?;
        rep.push(CheckRecord::residual(
            "B_J after α₁↔α₂ = B_T",
            "bochner-pair-swap",
            at,
            sj.max_diff(&bt),
            LEMMA_TOL,
        ));
        rep.push(CheckRecord::residual(
            "B_T after α₁↔α₂ = B_J",
            "bochner-pair-swap",
            at,
            st.max_diff(&bj),
            LEMMA_TOL,
        ));
    }
    Ok(rep)
}

/// Weyl tensor and conformal invariance of B.
pub fn conformal_suite(cp: &ContactPairManifold, e: &Expectations, points: Option<usize>) -> Result<Report> {
    let mut rep = Report::new(cp.id());
    for p in cp.points(points) {
        let at = Some(p.as_slice());
        let w = cp.at(&p)?.geometry.weyl()?.max_abs();
        rep.push(if e.conformally_flat {
            CheckRecord::residual("‖W‖∞ = 0", "conformal-flatness", at, w, WEYL_FLAT_TOL)
        } else {
            CheckRecord::exceeds(
                "‖W‖∞ (not conformally flat)",
                "conformal-flatness",
                at,
                w,
                NONFLAT_FLOOR,
            )
        });
    }
    rep.extend(conformal_invariance_check(cp, &Expr::Const(2f64.ln()), points)?);
    let last = cp.chart().coords().last().expect("chart has coordinates").clone();
    let f = Expr::mul(Expr::Const(0.05), Expr::coord(last));
    rep.extend(conformal_invariance_check(cp, &f, points)?);
    Ok(rep)
}
