//! Built-in model manifolds with closed-form charts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::contact::{ContactPairManifold, STRUCTURE_TOL};
use crate::conventions::HEISENBERG_SCALES;
use crate::error::{Error, Result};
use crate::expr::{derive, Expr};
use crate::linalg::max_abs;
use crate::riemann::{Chart, MetricField, OneFormExpr, VectorFieldExpr};

pub const SAMPLE_COUNT: usize = 5;
const ANGLE_RANGE: (f64, f64) = (0.3, 1.2);
const LINE_RANGE: (f64, f64) = (-1.0, 1.0);

/// Values every validator is expected to reproduce on an entry.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Expectations {
    pub pair_type: (usize, usize),
    /// Scalar curvature, when constant.
    pub scalar: Option<f64>,
    /// `τ − τ* = 4(m² + n²)`.
    pub scalar_gap: f64,
    pub bochner_flat: bool,
    pub conformally_flat: bool,
    /// `B_J(Z₁,Z₂,Z₂,Z₁)`, when known in closed form.
    pub bochner_reeb: Option<f64>,
    /// `R(X,φX,φX,X)` for unit horizontal leaf vectors, when constant.
    pub phi_sectional: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EntryInfo {
    pub id: &'static str,
    pub address: String,
    pub label: String,
    pub dim: usize,
    pub description: &'static str,
    pub expectations: Expectations,
}

/// Every catalog entry at its supported parameters.
pub fn entries() -> Vec<EntryInfo> {
    let mut v = Vec::new();
    for m in [1, 2] {
        v.push(EntryInfo {
            id: "hopf",
            address: format!("hopf:{m}"),
            label: format!("hopf m={m}"),
            dim: 2 * m + 2,
            description: "S^(2m+1)(1) × R in Hopf coordinates, type (m,0)",
            expectations: hopf_expectations(m),
        });
    }
    v.push(EntryInfo {
        id: "sphere_product",
        address: "sphere_product:1,1".into(),
        label: "sphere_product m=1 n=1".into(),
        dim: 6,
        description: "S³ × S³ with the two Hopf contact forms, type (1,1)",
        expectations: sphere_product_expectations(),
    });
    v.push(EntryInfo {
        id: "heisenberg_r",
        address: "heisenberg_r".into(),
        label: "heisenberg_r n=1".into(),
        dim: 4,
        description: "Heisenberg group H³ × R with its Sasakian structure, type (1,0)",
        expectations: heisenberg_expectations(),
    });
    v
}

fn hopf_expectations(m: usize) -> Expectations {
    let mf = m as f64;
    Expectations {
        pair_type: (m, 0),
        scalar: Some(2.0 * mf * (2.0 * mf + 1.0)),
        scalar_gap: 4.0 * mf * mf,
        bochner_flat: true,
        conformally_flat: true,
        bochner_reeb: Some(0.0),
        phi_sectional: Some(1.0),
    }
}

fn sphere_product_expectations() -> Expectations {
    let (m, n) = (1.0, 1.0);
    let tau = 12.0;
    Expectations {
        pair_type: (1, 1),
        scalar: Some(tau),
        scalar_gap: 8.0,
        bochner_flat: false,
        conformally_flat: false,
        bochner_reeb: Some(reeb_bochner_closed_form(m, n, tau)),
        phi_sectional: Some(1.0),
    }
}

fn heisenberg_expectations() -> Expectations {
    Expectations {
        pair_type: (1, 0),
        scalar: None,
        scalar_gap: 4.0,
        bochner_flat: false,
        conformally_flat: false,
        bochner_reeb: None,
        phi_sectional: None,
    }
}

/// `B(Z₁,Z₂,Z₂,Z₁)` evaluated term by term from the general Bochner
/// formula on a normal pair with decomposable φ, without setting it to
/// zero: `−16(m+n)/(16(m+n+3)) + (τ − 3(m²+n²))/((m+n+2)(m+n+3))`.
pub fn reeb_bochner_closed_form(m: f64, n: f64, tau: f64) -> f64 {
    let s = m + n;
    -16.0 * s / (16.0 * (s + 3.0)) + (tau - 3.0 * (m * m + n * n)) / ((s + 2.0) * (s + 3.0))
}

/// Resolves `name[:p1,p2,...]`.
pub fn resolve(address: &str) -> Result<(ContactPairManifold, Expectations)> {
    let (name, params) = match address.split_once(':') {
        Some((n, p)) => (n, p),
        None => (address, ""),
    };
    let params: Vec<usize> = if params.is_empty() {
        Vec::new()
    } else {
        params
            .split(',')
            .map(|s| s.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Unsupported(format!("parameters `{params}` are not integers")))?
    };
    match (name, params.as_slice()) {
        ("hopf", [m]) => Ok((hopf(*m)?, hopf_expectations(*m))),
        ("hopf", []) => Ok((hopf(1)?, hopf_expectations(1))),
        ("sphere_product", [m, n]) => Ok((sphere_product(*m, *n)?, sphere_product_expectations())),
        ("sphere_product", []) => Ok((sphere_product(1, 1)?, sphere_product_expectations())),
        ("heisenberg_r", [] | [1]) => Ok((heisenberg_r(1)?, heisenberg_expectations())),
        ("hopf" | "sphere_product" | "heisenberg_r", _) => Err(Error::Unsupported(format!("`{address}`"))),
        _ => Err(Error::UnknownManifold(address.to_string())),
    }
}

/// Five points with angles in [0.3, 1.2] and line coordinates in [−1, 1].
fn sample_points(seed: u64, angular: &[bool]) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..SAMPLE_COUNT)
        .map(|_| {
            angular
                .iter()
                .map(|&a| {
                    let (lo, hi) = if a { ANGLE_RANGE } else { LINE_RANGE };
                    rng.random_range(lo..hi)
                })
                .collect()
        })
        .collect()
}

fn exprs(chart: &Chart, src: &[&str]) -> Result<Vec<Expr>> {
    src.iter().map(|s| chart.parse(s)).collect()
}

/// `S^(2m+1)(1) × R`, type (m, 0).
pub fn hopf(m: usize) -> Result<ContactPairManifold> {
    match m {
        1 => hopf1(),
        2 => hopf2(),
        _ => Err(Error::Unsupported(format!("hopf({m}): only m = 1, 2"))),
    }
}

fn hopf1() -> Result<ContactPairManifold> {
    let chart = Chart::new(["eta", "xi1", "xi2", "t"])?
        .with_sample_points(sample_points(0x4f1, &[true, true, true, false]))?
        .with_singular_loci(vec!["eta = 0".into(), "eta = pi/2".into()]);
    let metric = MetricField::diagonal(&chart, exprs(&chart, &["1", "cos(eta)^2", "sin(eta)^2", "1"])?)?;
    let a1 = OneFormExpr(exprs(&chart, &["0", "cos(eta)^2", "sin(eta)^2", "0"])?);
    let a2 = OneFormExpr(exprs(&chart, &["0", "0", "0", "1"])?);
    let z1 = VectorFieldExpr(exprs(&chart, &["0", "1", "1", "0"])?);
    let z2 = VectorFieldExpr::coordinate(4, 3);
    ContactPairManifold::new("hopf:1", chart, metric, a1, a2, z1, z2, (1, 0))
}

fn hopf2() -> Result<ContactPairManifold> {
    let chart = Chart::new(["eta1", "eta2", "xi0", "xi1", "xi2", "t"])?
        .with_sample_points(sample_points(0x4f2, &[true, true, true, true, true, false]))?
        .with_singular_loci(vec![
            "eta1 = 0".into(),
            "eta1 = pi/2".into(),
            "eta2 = 0".into(),
            "eta2 = pi/2".into(),
        ]);
    let radii = exprs(&chart, &["cos(eta1)", "sin(eta1)*cos(eta2)", "sin(eta1)*sin(eta2)"])?;
    let sq = |e: &Expr| Expr::mul(e.clone(), e.clone());
    let angles = ["eta1", "eta2"];
    let d = 6;
    let mut upper = Vec::new();
    for i in 0..d {
        for j in i..d {
            let e = if i < 2 && j < 2 {
                radii.iter().fold(Expr::Const(0.0), |acc, r| {
                    Expr::add(acc, Expr::mul(derive(r, angles[i]), derive(r, angles[j])))
                })
            } else if i == j && (2..5).contains(&i) {
                sq(&radii[i - 2])
            } else if i == j {
                Expr::Const(1.0)
            } else {
                Expr::Const(0.0)
            };
            upper.push(e);
        }
    }
    let metric = MetricField::new(&chart, upper)?;
    let mut a1 = vec![Expr::Const(0.0); d];
    for k in 0..3 {
        a1[2 + k] = sq(&radii[k]);
    }
    let a2 = VectorFieldExpr::coordinate(d, 5).0;
    let z1 = VectorFieldExpr(exprs(&chart, &["0", "0", "1", "1", "1", "0"])?);
    let z2 = VectorFieldExpr::coordinate(d, 5);
    ContactPairManifold::new(
        "hopf:2",
        chart,
        metric,
        OneFormExpr(a1),
        OneFormExpr(a2),
        z1,
        z2,
        (2, 0),
    )
}

/// `S³ × S³`, each factor in Hopf coordinates, type (1, 1).
pub fn sphere_product(m: usize, n: usize) -> Result<ContactPairManifold> {
    if (m, n) != (1, 1) {
        return Err(Error::Unsupported(format!("sphere_product({m},{n}): only (1,1)")));
    }
    let chart = Chart::new(["eta", "xi1", "xi2", "zeta", "chi1", "chi2"])?
        .with_sample_points(sample_points(0x5b11, &[true; 6]))?
        .with_singular_loci(vec!["eta, zeta ∈ {0, pi/2}".into()]);
    let metric = MetricField::diagonal(
        &chart,
        exprs(
            &chart,
            &["1", "cos(eta)^2", "sin(eta)^2", "1", "cos(zeta)^2", "sin(zeta)^2"],
        )?,
    )?;
    let a1 = OneFormExpr(exprs(&chart, &["0", "cos(eta)^2", "sin(eta)^2", "0", "0", "0"])?);
    let a2 = OneFormExpr(exprs(&chart, &["0", "0", "0", "0", "cos(zeta)^2", "sin(zeta)^2"])?);
    let z1 = VectorFieldExpr(exprs(&chart, &["0", "1", "1", "0", "0", "0"])?);
    let z2 = VectorFieldExpr(exprs(&chart, &["0", "0", "0", "0", "1", "1"])?);
    ContactPairManifold::new("sphere_product:1,1", chart, metric, a1, a2, z1, z2, (1, 1))
}

/// Heisenberg group × R with scale constants `(a, b)`.
pub fn heisenberg_with(a: f64, b: f64) -> Result<ContactPairManifold> {
    let chart = Chart::new(["x", "y", "z", "t"])?
        .with_param("a", a)
        .with_param("b", b)
        .with_sample_points(sample_points(0x4e15, &[false; 4]))?;
    let metric = MetricField::new(
        &chart,
        exprs(
            &chart,
            &["a^2*y^2 + b", "0", "-a^2*y", "0", "b", "0", "0", "a^2", "0", "1"],
        )?,
    )?;
    let a1 = OneFormExpr(exprs(&chart, &["-a*y", "0", "a", "0"])?);
    let a2 = OneFormExpr(exprs(&chart, &["0", "0", "0", "1"])?);
    let z1 = VectorFieldExpr(exprs(&chart, &["0", "0", "1/a", "0"])?);
    let z2 = VectorFieldExpr::coordinate(4, 3);
    ContactPairManifold::new("heisenberg_r", chart, metric, a1, a2, z1, z2, (1, 0))
}

pub fn heisenberg_r(n: usize) -> Result<ContactPairManifold> {
    if n != 1 {
        return Err(Error::Unsupported(format!("heisenberg_r({n}): only n = 1")));
    }
    let (a, b) = HEISENBERG_SCALES;
    heisenberg_with(a, b)
}

/// Unit round sphere `S^d` in hyperspherical coordinates.
pub fn round_sphere(d: usize) -> Result<(Chart, MetricField)> {
    let names: Vec<String> = (1..=d).map(|i| format!("theta{i}")).collect();
    let chart = Chart::new(names.clone())?.with_sample_points(sample_points(0x5900 + d as u64, &vec![true; d]))?;
    let mut diag = Vec::with_capacity(d);
    let mut factor = Expr::Const(1.0);
    for name in &names {
        diag.push(factor.clone());
        let s = chart.parse(&format!("sin({name})^2"))?;
        factor = Expr::mul(factor, s);
    }
    let metric = MetricField::diagonal(&chart, diag)?;
    Ok((chart, metric))
}

/// Euclidean `R^d`.
pub fn flat(d: usize) -> Result<(Chart, MetricField)> {
    let names: Vec<String> = (0..d).map(|i| format!("x{i}")).collect();
    let chart = Chart::new(names)?.with_sample_points(sample_points(0xf1a7 + d as u64, &vec![false; d]))?;
    let metric = MetricField::diagonal(&chart, vec![Expr::Const(1.0); d])?;
    Ok((chart, metric))
}

/// Outcome of an executable convention pin.
#[derive(Debug, Clone, PartialEq)]
pub struct Pin<T> {
    pub candidates: Vec<(T, f64)>,
    pub passing: Vec<T>,
}

impl<T: Copy> Pin<T> {
    /// The unique passing candidate, if exactly one passes.
    pub fn unique(&self) -> Option<T> {
        match self.passing.as_slice() {
            [x] => Some(*x),
            _ => None,
        }
    }
}

/// Tries both `dα` normalizations on hopf(1) and records the worst
/// `φ² + Id − α₁⊗Z₁ − α₂⊗Z₂` residual of each.
pub fn pin_exterior_factor() -> Result<Pin<f64>> {
    let base = hopf(1)?;
    let mut pin = Pin {
        candidates: Vec::new(),
        passing: Vec::new(),
    };
    for s in [1.0, 0.5] {
        let cp = base.clone().with_exterior_factor(s);
        let mut worst = 0.0f64;
        for p in cp.points(None) {
            worst = worst.max(max_abs(&cp.at(&p)?.phi_square_defect()));
        }
        pin.candidates.push((s, worst));
        if worst < STRUCTURE_TOL {
            pin.passing.push(s);
        }
    }
    Ok(pin)
}

/// Scans a grid of Heisenberg scales and returns the first pair passing
/// every definition check.
pub fn pin_heisenberg_scales() -> Result<(f64, f64)> {
    for a in [1.0, 0.5, 2.0] {
        for b in [1.0, 0.5, 0.25, 2.0] {
            let cp = heisenberg_with(a, b)?;
            if crate::contact::require_valid(&cp, None).is_ok() {
                return Ok((a, b));
            }
        }
    }
    Err(Error::StructureInvalid(vec![
        "no Heisenberg scales on the grid pass".into()
    ]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolve_addresses() {
        assert_eq!(resolve("hopf:2").unwrap().0.dim(), 6);
        assert_eq!(resolve("sphere_product:1,1").unwrap().0.pair_type(), (1, 1));
        assert!(matches!(resolve("hopf:3"), Err(Error::Unsupported(_))));
        assert!(matches!(resolve("torus"), Err(Error::UnknownManifold(_))));
        assert!(matches!(resolve("hopf:x"), Err(Error::Unsupported(_))));
    }

    #[test]
    fn samples_are_deterministic_and_in_range() {
        let a = sample_points(7, &[true, false]);
        assert_eq!(a, sample_points(7, &[true, false]));
        assert_eq!(a.len(), SAMPLE_COUNT);
        for p in &a {
            assert!((0.3..1.2).contains(&p[0]));
            assert!((-1.0..1.0).contains(&p[1]));
        }
    }

    #[test]
    fn closed_form_on_sphere_product() {
        assert!((reeb_bochner_closed_form(1.0, 1.0, 12.0) + 0.1).abs() < 1e-15);
    }

    #[test]
    fn list_has_four_entries() {
        let labels: Vec<String> = entries().into_iter().map(|e| e.label).collect();
        assert_eq!(
            labels,
            ["hopf m=1", "hopf m=2", "sphere_product m=1 n=1", "heisenberg_r n=1"]
        );
    }
}
