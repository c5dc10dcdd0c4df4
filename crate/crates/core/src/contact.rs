//! Metric contact pairs: structure synthesis (φ, J, T), the characteristic
//! foliations, and pointwise validation of the defining identities and of
//! the standard curvature identities of normal pairs with decomposable φ.

use nalgebra::{DMatrix, DVector};

use crate::conventions::EXTERIOR_FACTOR;
use crate::error::{Error, Result};
use crate::forms::{exterior_derivative, PointForm, TwoFormExpr};
use crate::jet::Jet2;
use crate::linalg::{g_orthogonal_projector, max_abs, nullspace};
use crate::report::{CheckRecord, Report};
use crate::riemann::{lie_bracket_jets, Chart, MetricField, OneFormExpr, PointGeometry, Tensor11Expr, VectorFieldExpr};
use crate::tensor::{TensorValue, Variance};

/// Identities that hold exactly given jets (J², orthogonality).
pub const EXACT_TOL: f64 = 1e-9;
/// Defining equations of the pair and of φ.
pub const STRUCTURE_TOL: f64 = 1e-8;
/// Identities passing through an inversion and a contraction chain.
pub const LEMMA_TOL: f64 = 1e-7;
pub const NORMALITY_TOL: f64 = 1e-7;
/// Lower bound on the contact volume coefficient, upper bound on the
/// vanishing powers.
pub const VOLUME_FLOOR: f64 = 1e-10;
pub const NULLSPACE_REL_TOL: f64 = 1e-8;
pub const TEST_VECTOR_FLOOR: f64 = 1e-6;
pub const DEDUP_ANGLE: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Structure {
    J,
    T,
}

#[derive(Debug, Clone)]
pub struct ContactPairManifold {
    id: String,
    chart: Chart,
    metric: MetricField,
    alpha: [OneFormExpr; 2],
    reeb: [VectorFieldExpr; 2],
    pair_type: (usize, usize),
    exterior_factor: f64,
    dalpha: [TwoFormExpr; 2],
    phi_perturbation: Option<Tensor11Expr>,
}

impl ContactPairManifold {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        id: impl Into<String>,
        chart: Chart,
        metric: MetricField,
        alpha1: OneFormExpr,
        alpha2: OneFormExpr,
        z1: VectorFieldExpr,
        z2: VectorFieldExpr,
        pair_type: (usize, usize),
    ) -> Result<Self> {
        let d = chart.dim();
        let (m, n) = pair_type;
        if 2 * m + 2 * n + 2 != d {
            return Err(Error::Definition(format!(
                "type ({m},{n}) needs dimension {}, chart has {d}",
                2 * m + 2 * n + 2
            )));
        }
        for (name, len) in [
            ("alpha1", alpha1.0.len()),
            ("alpha2", alpha2.0.len()),
            ("Z1", z1.0.len()),
            ("Z2", z2.0.len()),
        ] {
            if len != d {
                return Err(Error::Definition(format!("{name} has {len} components, expected {d}")));
            }
        }
        let s = EXTERIOR_FACTOR;
        let dalpha = [
            exterior_derivative(&chart, &alpha1, s),
            exterior_derivative(&chart, &alpha2, s),
        ];
        Ok(ContactPairManifold {
            id: id.into(),
            chart,
            metric,
            alpha: [alpha1, alpha2],
            reeb: [z1, z2],
            pair_type,
            exterior_factor: s,
            dalpha,
            phi_perturbation: None,
        })
    }

    /// Same data with a different `dα` normalization.
    pub fn with_exterior_factor(mut self, s: f64) -> Self {
        self.exterior_factor = s;
        self.dalpha = [
            exterior_derivative(&self.chart, &self.alpha[0], s),
            exterior_derivative(&self.chart, &self.alpha[1], s),
        ];
        self
    }

    /// Declares a different type; the dimension must still match.
    pub fn with_type(mut self, m: usize, n: usize) -> Result<Self> {
        if 2 * m + 2 * n + 2 != self.chart.dim() {
            return Err(Error::Definition(format!(
                "type ({m},{n}) needs dimension {}, chart has {}",
                2 * m + 2 * n + 2,
                self.chart.dim()
            )));
        }
        self.pair_type = (m, n);
        Ok(self)
    }

    /// Relabels α₁ ↔ α₂ (and Z₁ ↔ Z₂, m ↔ n).
    pub fn swapped(&self) -> Self {
        let mut c = self.clone();
        c.alpha.swap(0, 1);
        c.reeb.swap(0, 1);
        c.dalpha.swap(0, 1);
        c.pair_type = (self.pair_type.1, self.pair_type.0);
        c.id = format!("{} (swapped)", self.id);
        c
    }

    pub fn with_metric(mut self, metric: MetricField) -> Self {
        self.metric = metric;
        self
    }

    /// Adds `delta` to the synthesized φ (negative controls).
    pub fn with_phi_perturbation(mut self, delta: Tensor11Expr) -> Self {
        self.phi_perturbation = Some(delta);
        self
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    pub fn with_chart(mut self, chart: Chart) -> Self {
        self.chart = chart;
        self
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn metric(&self) -> &MetricField {
        &self.metric
    }

    pub fn alpha(&self, i: usize) -> &OneFormExpr {
        &self.alpha[i]
    }

    pub fn reeb(&self, i: usize) -> &VectorFieldExpr {
        &self.reeb[i]
    }

    pub fn dalpha(&self, i: usize) -> &TwoFormExpr {
        &self.dalpha[i]
    }

    pub fn pair_type(&self) -> (usize, usize) {
        self.pair_type
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn exterior_factor(&self) -> f64 {
        self.exterior_factor
    }

    /// Evaluates the structure at `p`.
    pub fn at(&self, p: &[f64]) -> Result<ContactPoint> {
        let d = self.dim();
        let geometry = PointGeometry::compute(&self.chart, &self.metric, p)?;
        let env = self.chart.env_jet(p);
        let alpha = [
            self.alpha[0].jets(&self.chart, &env)?,
            self.alpha[1].jets(&self.chart, &env)?,
        ];
        let reeb = [
            self.reeb[0].jets(&self.chart, &env)?,
            self.reeb[1].jets(&self.chart, &env)?,
        ];
        let dalpha = [
            self.dalpha[0].jets(&self.chart, &env)?,
            self.dalpha[1].jets(&self.chart, &env)?,
        ];

        // φ^k_j = g^{ki} (dα₁ + dα₂)_{ij}
        let mut phi = Vec::with_capacity(d * d);
        for k in 0..d {
            for j in 0..d {
                let mut acc = Jet2::constant(0.0, d);
                for i in 0..d {
                    let w = &dalpha[0][i * d + j] + &dalpha[1][i * d + j];
                    acc = &acc + &(&geometry.g_inv_jets[k * d + i] * &w);
                }
                phi.push(acc);
            }
        }
        if let Some(delta) = &self.phi_perturbation {
            for (f, e) in phi.iter_mut().zip(delta.jets(&self.chart, &env)?) {
                *f = &*f + &e;
            }
        }
        let outer = |z: &[Jet2], a: &[Jet2], k: usize, j: usize| &z[k] * &a[j];
        let mut j_jets = Vec::with_capacity(d * d);
        let mut t_jets = Vec::with_capacity(d * d);
        for k in 0..d {
            for j in 0..d {
                let c = &outer(&reeb[1], &alpha[0], k, j) - &outer(&reeb[0], &alpha[1], k, j);
                j_jets.push(&phi[k * d + j] + &c);
                t_jets.push(&phi[k * d + j] - &c);
            }
        }
        Ok(ContactPoint {
            geometry,
            pair_type: self.pair_type,
            alpha,
            reeb,
            dalpha,
            phi,
            j: j_jets,
            t: t_jets,
        })
    }

    /// Sample points of the chart, optionally truncated.
    pub fn points(&self, limit: Option<usize>) -> Vec<Vec<f64>> {
        let pts = self.chart.sample_points();
        pts[..limit.unwrap_or(pts.len()).min(pts.len())].to_vec()
    }
}

/// The structure and its jets at one point.
#[derive(Debug, Clone)]
pub struct ContactPoint {
    pub geometry: PointGeometry,
    pub pair_type: (usize, usize),
    pub alpha: [Vec<Jet2>; 2],
    pub reeb: [Vec<Jet2>; 2],
    /// `(dα)_ij` row-major.
    pub dalpha: [Vec<Jet2>; 2],
    /// `φ^k_j` at `[k*d + j]`.
    pub phi: Vec<Jet2>,
    pub j: Vec<Jet2>,
    pub t: Vec<Jet2>,
}

fn vec_of(j: &[Jet2]) -> DVector<f64> {
    DVector::from_iterator(j.len(), j.iter().map(Jet2::val))
}

fn mat_of(j: &[Jet2], d: usize) -> DMatrix<f64> {
    DMatrix::from_fn(d, d, |r, c| j[r * d + c].val())
}

/// `P₁`, `P₂` (g-orthogonal projectors onto T𝓕₁, T𝓕₂) and `H`.
#[derive(Debug, Clone)]
pub struct Projectors {
    pub p1: DMatrix<f64>,
    pub p2: DMatrix<f64>,
    pub h: DMatrix<f64>,
    pub dims: [usize; 3],
}

impl ContactPoint {
    pub fn dim(&self) -> usize {
        self.geometry.dim()
    }

    pub fn point(&self) -> &[f64] {
        &self.geometry.point
    }

    pub fn g(&self) -> &DMatrix<f64> {
        &self.geometry.g
    }

    pub fn alpha_v(&self, i: usize) -> DVector<f64> {
        vec_of(&self.alpha[i])
    }

    pub fn reeb_v(&self, i: usize) -> DVector<f64> {
        vec_of(&self.reeb[i])
    }

    pub fn dalpha_v(&self, i: usize) -> DMatrix<f64> {
        mat_of(&self.dalpha[i], self.dim())
    }

    /// φ as a matrix acting on column vectors.
    pub fn phi_v(&self) -> DMatrix<f64> {
        mat_of(&self.phi, self.dim())
    }

    pub fn structure_jets(&self, which: Structure) -> &[Jet2] {
        match which {
            Structure::J => &self.j,
            Structure::T => &self.t,
        }
    }

    pub fn structure_v(&self, which: Structure) -> DMatrix<f64> {
        mat_of(self.structure_jets(which), self.dim())
    }

    pub fn phi_tensor(&self) -> TensorValue {
        TensorValue::from_matrix(&self.phi_v(), [Variance::Up, Variance::Down], self.point())
    }

    /// `φ² + Id − α₁⊗Z₁ − α₂⊗Z₂`.
    pub fn phi_square_defect(&self) -> DMatrix<f64> {
        let d = self.dim();
        let phi = self.phi_v();
        let mut r = &phi * &phi + DMatrix::identity(d, d);
        for i in 0..2 {
            r -= self.reeb_v(i) * self.alpha_v(i).transpose();
        }
        r
    }

    pub fn projectors(&self) -> Result<Projectors> {
        let d = self.dim();
        let (m, n) = self.pair_type;
        let g = self.g();
        let leaf = |i: usize| {
            let mut a = DMatrix::zeros(d + 1, d);
            a.row_mut(0).copy_from(&self.alpha_v(i).transpose());
            // row 1 + b: X ↦ dα(X, ∂b)
            a.view_mut((1, 0), (d, d)).copy_from(&self.dalpha_v(i).transpose());
            nullspace(&a, NULLSPACE_REL_TOL)
        };
        let b1 = leaf(0);
        let b2 = leaf(1);
        let mut horiz = DMatrix::zeros(2, d);
        horiz.row_mut(0).copy_from(&self.alpha_v(0).transpose());
        horiz.row_mut(1).copy_from(&self.alpha_v(1).transpose());
        let bh = nullspace(&horiz, NULLSPACE_REL_TOL);
        let dims = [b1.ncols(), b2.ncols(), bh.ncols()];
        let want = [2 * n + 1, 2 * m + 1, 2 * m + 2 * n];
        let mut problems = Vec::new();
        for ((got, want), name) in dims.iter().zip(want).zip(["T𝓕₁", "T𝓕₂", "H"]) {
            if *got != want {
                problems.push(format!("dim {name} = {got}, expected {want}"));
            }
        }
        if !problems.is_empty() {
            return Err(Error::StructureInvalid(problems));
        }
        Ok(Projectors {
            p1: g_orthogonal_projector(&b1, g),
            p2: g_orthogonal_projector(&b2, g),
            h: g_orthogonal_projector(&bh, g),
            dims,
        })
    }

    /// `φ₁ = φ∘P₂`, `φ₂ = φ∘P₁`.
    pub fn partial_phis(&self, pr: &Projectors) -> [DMatrix<f64>; 2] {
        let phi = self.phi_v();
        [&phi * &pr.p2, &phi * &pr.p1]
    }

    /// `N(∂a, ∂b)^i` with slot order (a, b, i).
    pub fn nijenhuis(&self, which: Structure) -> TensorValue {
        nijenhuis_tensor(self.structure_jets(which), self.point())
    }

    /// Orthonormal frame starting with Z₁, Z₂.
    pub fn frame(&self) -> Result<Vec<DVector<f64>>> {
        self.geometry.orthonormal_frame(&[self.reeb_v(0), self.reeb_v(1)])
    }

    /// ρ* of `(g, J)` (or `T`) by the frame sum `Σ R(X, e_i, J e_i, J Y)`.
    pub fn star_ricci_with(&self, which: Structure, frame: &[DVector<f64>]) -> TensorValue {
        let d = self.dim();
        let jm = self.structure_v(which);
        let r = &self.geometry.riemann;
        let mut out = DMatrix::<f64>::zeros(d, d);
        for e in frame {
            let je = &jm * e;
            // m[a][s] = R(∂a, e, Je, ∂s)
            let m = DMatrix::from_fn(d, d, |a, s| {
                let mut v = 0.0;
                for q in 0..d {
                    for k in 0..d {
                        v += r.at4(a, q, k, s) * e[q] * je[k];
                    }
                }
                v
            });
            out += m * &jm;
        }
        TensorValue::from_matrix(&out, [Variance::Down, Variance::Down], self.point())
    }

    pub fn star_ricci(&self) -> Result<TensorValue> {
        Ok(self.star_ricci_with(Structure::J, &self.frame()?))
    }

    pub fn star_scalar(&self) -> Result<f64> {
        let rs = self.star_ricci()?;
        Ok(trace_g(&self.geometry.g_inv, &rs.to_matrix()))
    }

    /// Unit vectors in T𝓕₂ ∩ H: coordinate vectors projected by P₂ then
    /// H, short ones dropped, near-duplicates removed.
    pub fn leaf_horizontal_vectors(&self, pr: &Projectors) -> Vec<DVector<f64>> {
        let d = self.dim();
        let mut out: Vec<DVector<f64>> = Vec::new();
        for a in 0..d {
            let e = DVector::from_fn(d, |k, _| if k == a { 1.0 } else { 0.0 });
            let v = &pr.h * (&pr.p2 * e);
            let n = self.geometry.norm(&v);
            if n < TEST_VECTOR_FLOOR {
                continue;
            }
            let v = v / n;
            let duplicate = out.iter().any(|u| {
                let c = self.geometry.inner(u, &v).abs().min(1.0);
                c.acos() <= DEDUP_ANGLE
            });
            if !duplicate {
                out.push(v);
            }
        }
        out
    }
}

/// Nijenhuis tensor `N(X,Y) = [JX,JY] − J[JX,Y] − J[X,JY] − [X,Y]` of a
/// (1,1) field given as jets `J^k_j` at `[k*d + j]`, on coordinate fields.
/// Slot order (a, b, i) for `N(∂a, ∂b)^i`.
pub fn nijenhuis_tensor(jj: &[Jet2], point: &[f64]) -> TensorValue {
    let d = point.len();
    let jv = mat_of(jj, d);
    let cols: Vec<Vec<Jet2>> = (0..d)
        .map(|a| (0..d).map(|k| jj[k * d + a].clone()).collect())
        .collect();
    // ∂_b (J∂a)
    let dcol = |a: usize, b: usize| DVector::from_fn(d, |k, _| cols[a][k].d(b));
    let mut t = TensorValue::zeros(&[Variance::Down, Variance::Down, Variance::Up], d, point);
    for a in 0..d {
        for b in 0..d {
            let n = lie_bracket_jets(&cols[a], &cols[b]) + &jv * (dcol(a, b) - dcol(b, a));
            for i in 0..d {
                t.set(&[a, b, i], n[i]);
            }
        }
    }
    t
}

fn trace_g(g_inv: &DMatrix<f64>, s: &DMatrix<f64>) -> f64 {
    g_inv.component_mul(s).sum()
}

/// φ at `p`, gated on `φ² = −Id + α₁⊗Z₁ + α₂⊗Z₂`.
pub fn synthesize_phi(cp: &ContactPairManifold, p: &[f64]) -> Result<TensorValue> {
    let pt = cp.at(p)?;
    let defect = max_abs(&pt.phi_square_defect());
    if !(defect < STRUCTURE_TOL) {
        return Err(Error::StructureInvalid(vec![format!(
            "φ² + Id − α₁⊗Z₁ − α₂⊗Z₂ has residual {defect:e} at {p:?}"
        )]));
    }
    Ok(pt.phi_tensor())
}

/// `(J, T)` at `p`.
pub fn build_j_t(cp: &ContactPairManifold, p: &[f64]) -> Result<(TensorValue, TensorValue)> {
    let pt = cp.at(p)?;
    let v = [Variance::Up, Variance::Down];
    Ok((
        TensorValue::from_matrix(&pt.structure_v(Structure::J), v, p),
        TensorValue::from_matrix(&pt.structure_v(Structure::T), v, p),
    ))
}

pub fn foliation_projectors(cp: &ContactPairManifold, p: &[f64]) -> Result<Projectors> {
    cp.at(p)?.projectors()
}

pub fn nijenhuis(cp: &ContactPairManifold, p: &[f64], which: Structure) -> Result<TensorValue> {
    Ok(cp.at(p)?.nijenhuis(which))
}

pub fn star_ricci(cp: &ContactPairManifold, p: &[f64]) -> Result<TensorValue> {
    cp.at(p)?.star_ricci()
}

pub fn star_scalar(cp: &ContactPairManifold, p: &[f64]) -> Result<f64> {
    cp.at(p)?.star_scalar()
}

/// The contact condition at one point: volume form and vanishing powers.
pub fn check_contact_pair(cp: &ContactPairManifold, p: &[f64]) -> Result<Report> {
    let pt = cp.at(p)?;
    let mut rep = Report::new(cp.id());
    volume_records(&pt, &mut rep);
    Ok(rep)
}

fn volume_records(pt: &ContactPoint, rep: &mut Report) {
    let (m, n) = pt.pair_type;
    let p = Some(pt.point());
    let a1 = PointForm::one_form(&pt.alpha_v(0));
    let a2 = PointForm::one_form(&pt.alpha_v(1));
    let w1 = PointForm::two_form(&pt.dalpha_v(0));
    let w2 = PointForm::two_form(&pt.dalpha_v(1));
    let vol = a1.wedge(&w1.power(m)).wedge(&a2).wedge(&w2.power(n));
    rep.push(CheckRecord::exceeds(
        "contact volume |α₁∧(dα₁)^m∧α₂∧(dα₂)^n|",
        "contact-condition",
        p,
        vol.top_coefficient().abs(),
        VOLUME_FLOOR,
    ));
    rep.push(CheckRecord::residual(
        "(dα₁)^(m+1) = 0",
        "contact-condition",
        p,
        w1.power(m + 1).max_abs(),
        VOLUME_FLOOR,
    ));
    rep.push(CheckRecord::residual(
        "(dα₂)^(n+1) = 0",
        "contact-condition",
        p,
        w2.power(n + 1).max_abs(),
        VOLUME_FLOOR,
    ));
}

/// Every defining identity of a normal metric contact pair with
/// decomposable φ at one point.
pub fn definition_records(pt: &ContactPoint) -> Report {
    let d = pt.dim();
    let p = Some(pt.point());
    let mut rep = Report::new("");
    let g = pt.g();
    let id = DMatrix::<f64>::identity(d, d);
    let (a, z, da) = (
        [pt.alpha_v(0), pt.alpha_v(1)],
        [pt.reeb_v(0), pt.reeb_v(1)],
        [pt.dalpha_v(0), pt.dalpha_v(1)],
    );

    let mut reeb = 0.0f64;
    let mut interior = 0.0f64;
    for i in 0..2 {
        for j in 0..2 {
            let delta = if i == j { 1.0 } else { 0.0 };
            reeb = reeb.max((a[j].dot(&z[i]) - delta).abs());
            interior = interior.max((da[j].transpose() * &z[i]).amax());
        }
    }
    rep.push(CheckRecord::residual(
        "α_i(Z_j) = δ_ij",
        "reeb-equations",
        p,
        reeb,
        STRUCTURE_TOL,
    ));
    rep.push(CheckRecord::residual(
        "i_{Z_i} dα_j = 0",
        "reeb-equations",
        p,
        interior,
        STRUCTURE_TOL,
    ));
    let dual = (0..2).map(|i| (g * &z[i] - &a[i]).amax()).fold(0.0, f64::max);
    rep.push(CheckRecord::residual(
        "g(X, Z_i) = α_i(X)",
        "associated-metric",
        p,
        dual,
        STRUCTURE_TOL,
    ));

    volume_records(pt, &mut rep);

    let phi = pt.phi_v();
    rep.push(CheckRecord::residual(
        "φ² = −Id + α₁⊗Z₁ + α₂⊗Z₂",
        "contact-pair-structure",
        p,
        max_abs(&pt.phi_square_defect()),
        STRUCTURE_TOL,
    ));
    let kills = (0..2).map(|i| (&phi * &z[i]).amax()).fold(0.0, f64::max);
    rep.push(CheckRecord::residual(
        "φZ_i = 0",
        "contact-pair-structure",
        p,
        kills,
        STRUCTURE_TOL,
    ));
    let annihilated = (0..2).map(|i| (a[i].transpose() * &phi).amax()).fold(0.0, f64::max);
    rep.push(CheckRecord::residual(
        "α_i∘φ = 0",
        "contact-pair-structure",
        p,
        annihilated,
        STRUCTURE_TOL,
    ));
    let rank = phi.rank(STRUCTURE_TOL * phi.amax().max(1.0));
    rep.push(CheckRecord::value(
        "rank φ = dim − 2",
        "contact-pair-structure",
        p,
        rank as f64,
        (d - 2) as f64,
        0.5,
    ));
    let assoc = max_abs(&(g * &phi - (&da[0] + &da[1])));
    rep.push(CheckRecord::residual(
        "g(X, φY) = (dα₁+dα₂)(X,Y)",
        "associated-metric",
        p,
        assoc,
        EXACT_TOL,
    ));

    match pt.projectors() {
        Ok(pr) => {
            let (m, n) = pt.pair_type;
            rep.push(CheckRecord::value(
                "dim T𝓕₁ = 2n+1",
                "characteristic-foliations",
                p,
                pr.dims[0] as f64,
                (2 * n + 1) as f64,
                0.5,
            ));
            rep.push(CheckRecord::value(
                "dim T𝓕₂ = 2m+1",
                "characteristic-foliations",
                p,
                pr.dims[1] as f64,
                (2 * m + 1) as f64,
                0.5,
            ));
            rep.push(CheckRecord::residual(
                "P₁P₂ = 0",
                "characteristic-foliations",
                p,
                max_abs(&(&pr.p1 * &pr.p2)),
                STRUCTURE_TOL,
            ));
            rep.push(CheckRecord::residual(
                "P₁ + P₂ = Id",
                "characteristic-foliations",
                p,
                max_abs(&(&pr.p1 + &pr.p2 - &id)),
                STRUCTURE_TOL,
            ));
            let commute = [&pr.p1, &pr.p2]
                .iter()
                .map(|q| max_abs(&(&phi * *q - *q * &phi)))
                .fold(0.0, f64::max);
            rep.push(CheckRecord::residual(
                "φP_i = P_iφ",
                "decomposability",
                p,
                commute,
                STRUCTURE_TOL,
            ));
        }
        Err(e) => rep.push(CheckRecord::failed(
            &format!("characteristic foliations: {e}"),
            "characteristic-foliations",
            p,
            STRUCTURE_TOL,
        )),
    }

    for (which, name) in [(Structure::J, "J"), (Structure::T, "T")] {
        let s = pt.structure_v(which);
        rep.push(CheckRecord::residual(
            &format!("{name}² = −Id"),
            "complex-structures",
            p,
            max_abs(&(&s * &s + &id)),
            EXACT_TOL,
        ));
        rep.push(CheckRecord::residual(
            &format!("g({name}X, {name}Y) = g(X, Y)"),
            "complex-structures",
            p,
            max_abs(&(s.transpose() * g * &s - g)),
            EXACT_TOL,
        ));
        rep.push(CheckRecord::residual(
            &format!("N_{name} = 0"),
            "normality",
            p,
            pt.nijenhuis(which).max_abs(),
            NORMALITY_TOL,
        ));
    }
    let bracket = lie_bracket_jets(&pt.reeb[0], &pt.reeb[1]).amax();
    rep.push(CheckRecord::residual(
        "[Z₁, Z₂] = 0",
        "reeb-equations",
        p,
        bracket,
        EXACT_TOL,
    ));
    rep
}

/// Definition checks at every sample point.
pub fn validate(cp: &ContactPairManifold, points: Option<usize>) -> Result<Report> {
    let mut rep = Report::new(cp.id());
    for p in cp.points(points) {
        let pt = cp.at(&p)?;
        rep.extend(definition_records(&pt));
    }
    Ok(rep)
}

/// Fails with the list of violated clauses unless every definition check
/// passes.
pub fn require_valid(cp: &ContactPairManifold, points: Option<usize>) -> Result<()> {
    let rep = validate(cp, points)?;
    let problems: Vec<String> = rep
        .failures()
        .map(|r| {
            let at = r.point.as_ref().map(|p| format!(" at {p:?}")).unwrap_or_default();
            format!("{}{at}: residual {:e}", r.check, r.residual)
        })
        .collect();
    if problems.is_empty() {
        Ok(())
    } else {
        Err(Error::StructureInvalid(problems))
    }
}

/// Curvature identities of normal pairs at one point.
pub fn lemma_records(pt: &ContactPoint) -> Result<Report> {
    let d = pt.dim();
    let p = Some(pt.point());
    let (m, n) = pt.pair_type;
    let (mf, nf) = (m as f64, n as f64);
    let geo = &pt.geometry;
    let g = pt.g();
    let mut rep = Report::new("");
    let pr = pt.projectors()?;
    let [phi1, phi2] = pt.partial_phis(&pr);
    let phi = pt.phi_v();
    let a = [pt.alpha_v(0), pt.alpha_v(1)];
    let z = [pt.reeb_v(0), pt.reeb_v(1)];
    let da = [pt.dalpha_v(0), pt.dalpha_v(1)];

    // ∇Z_i = −φ_i
    for (i, phi_i) in [&phi1, &phi2].into_iter().enumerate() {
        let nz = geo.covariant_derivative_vector(&pt.reeb[i]).to_matrix();
        // nz[(x, k)] = (∇_{∂x} Z)^k, compare with −(φ_i)[(k, x)]
        let res = max_abs(&(nz.transpose() + phi_i));
        rep.push(CheckRecord::residual(
            &format!("∇Z{} = −φ{}", i + 1, i + 1),
            "reeb-covariant-derivative",
            p,
            res,
            LEMMA_TOL,
        ));
    }

    // g((∇_Xφ)Y, V) and g((∇_XJ)Y, V)
    let phit_da = [phi.transpose() * &da[0], phi.transpose() * &da[1]];
    let base = |x: usize, y: usize, v: usize| -> f64 {
        (0..2)
            .map(|i| phit_da[i][(y, x)] * a[i][v] - phit_da[i][(v, x)] * a[i][y])
            .sum()
    };
    let lower =
        |t: &TensorValue, x: usize, y: usize, v: usize| -> f64 { (0..d).map(|k| t.at3(x, k, y) * g[(k, v)]).sum() };
    let nphi = geo.covariant_derivative_11(&pt.phi);
    let nj = geo.covariant_derivative_11(&pt.j);
    let (mut rphi, mut rj) = (0.0f64, 0.0f64);
    for x in 0..d {
        for y in 0..d {
            for v in 0..d {
                let b = base(x, y, v);
                rphi = rphi.max((lower(&nphi, x, y, v) - b).abs());
                let extra = -da[1][(x, y)] * a[0][v] - da[0][(x, v)] * a[1][y]
                    + da[0][(x, y)] * a[1][v]
                    + da[1][(x, v)] * a[0][y];
                rj = rj.max((lower(&nj, x, y, v) - b - extra).abs());
            }
        }
    }
    rep.push(CheckRecord::residual(
        "g((∇_Xφ)Y, V)",
        "phi-covariant-derivative",
        p,
        rphi,
        LEMMA_TOL,
    ));
    rep.push(CheckRecord::residual(
        "g((∇_XJ)Y, V)",
        "j-covariant-derivative",
        p,
        rj,
        LEMMA_TOL,
    ));

    // g(R(X,Y)Z, V), Z = Z₁ + Z₂
    let zsum = &z[0] + &z[1];
    let mut rcurv = 0.0f64;
    for x in 0..d {
        for y in 0..d {
            for v in 0..d {
                let lhs: f64 = (0..d).map(|k| geo.riemann.at4(x, y, k, v) * zsum[k]).sum();
                let rhs: f64 = (0..2)
                    .map(|i| phit_da[i][(v, x)] * a[i][y] - phit_da[i][(v, y)] * a[i][x])
                    .sum();
                rcurv = rcurv.max((lhs - rhs).abs());
            }
        }
    }
    rep.push(CheckRecord::residual(
        "g(R(X,Y)Z, V)",
        "curvature-along-reeb",
        p,
        rcurv,
        LEMMA_TOL,
    ));

    // R(X, Z_i, Z_j, X) on unit X ∈ T𝓕₂ ∩ H
    let xs = pt.leaf_horizontal_vectors(&pr);
    if xs.is_empty() {
        rep.push(CheckRecord::info(
            "T𝓕₂ ∩ H test vectors",
            "reeb-sectional-curvature",
            p,
            0.0,
        ));
    }
    let mut sect = [0.0f64; 3];
    for x in &xs {
        sect[0] = sect[0].max((geo.riemann_on(x, &z[0], &z[0], x) - 1.0).abs());
        sect[1] = sect[1].max(geo.riemann_on(x, &z[0], &z[1], x).abs());
        sect[2] = sect[2].max(geo.riemann_on(x, &z[1], &z[1], x).abs());
    }
    if !xs.is_empty() {
        for (k, name) in ["R(X,Z₁,Z₁,X) = 1", "R(X,Z₁,Z₂,X) = 0", "R(X,Z₂,Z₂,X) = 0"]
            .into_iter()
            .enumerate()
        {
            rep.push(CheckRecord::residual(
                name,
                "reeb-sectional-curvature",
                p,
                sect[k],
                LEMMA_TOL,
            ));
        }
    }

    // ρ* identity, symmetry, J-invariance, τ − τ*
    let frame = pt.frame()?;
    let rs = pt.star_ricci_with(Structure::J, &frame).to_matrix();
    let ric = geo.ricci.to_matrix();
    let predicted = &ric
        - (2.0 * mf - 1.0) * phi1.transpose() * g * &phi1
        - (2.0 * nf - 1.0) * phi2.transpose() * g * &phi2
        - 2.0 * mf * &a[0] * a[0].transpose()
        - 2.0 * nf * &a[1] * a[1].transpose();
    let jm = pt.structure_v(Structure::J);
    rep.push(CheckRecord::residual(
        "ρ* = ρ − corrections",
        "star-ricci-identity",
        p,
        max_abs(&(&rs - predicted)),
        LEMMA_TOL,
    ));
    rep.push(CheckRecord::residual(
        "ρ* symmetric",
        "star-ricci-identity",
        p,
        max_abs(&(&rs - rs.transpose())),
        LEMMA_TOL,
    ));
    rep.push(CheckRecord::residual(
        "ρ*(JX, JY) = ρ*(X, Y)",
        "star-ricci-identity",
        p,
        max_abs(&(jm.transpose() * &rs * &jm - &rs)),
        LEMMA_TOL,
    ));
    rep.push(CheckRecord::residual(
        "ρ*(X, Y) = ρ*(JY, JX)",
        "star-ricci-identity",
        p,
        max_abs(&(jm.transpose() * rs.transpose() * &jm - &rs)),
        STRUCTURE_TOL,
    ));
    let tau_star = trace_g(&geo.g_inv, &rs);
    rep.push(CheckRecord::value(
        "τ − τ* = 4(m² + n²)",
        "star-ricci-identity",
        p,
        geo.scalar - tau_star,
        4.0 * (mf * mf + nf * nf),
        LEMMA_TOL,
    ));

    // Ricci on the Reeb fields
    let rz = |i: usize, j: usize| geo.ricci_on(&z[i], &z[j]);
    let sz = |i: usize, j: usize| z[i].dot(&(&rs * &z[j]));
    rep.push(CheckRecord::value(
        "ρ₁₁ = 2m",
        "ricci-reeb-values",
        p,
        rz(0, 0),
        2.0 * mf,
        LEMMA_TOL,
    ));
    rep.push(CheckRecord::value(
        "ρ₂₂ = 2n",
        "ricci-reeb-values",
        p,
        rz(1, 1),
        2.0 * nf,
        LEMMA_TOL,
    ));
    rep.push(CheckRecord::value(
        "ρ₁₂ = 0",
        "ricci-reeb-values",
        p,
        rz(0, 1),
        0.0,
        LEMMA_TOL,
    ));
    rep.push(CheckRecord::value(
        "ρ*₁₁ = 0",
        "ricci-reeb-values",
        p,
        sz(0, 0),
        0.0,
        LEMMA_TOL,
    ));
    rep.push(CheckRecord::value(
        "ρ*₂₂ = 0",
        "ricci-reeb-values",
        p,
        sz(1, 1),
        0.0,
        LEMMA_TOL,
    ));
    rep.push(CheckRecord::value(
        "ρ*₁₂ = 0",
        "ricci-reeb-values",
        p,
        sz(0, 1),
        0.0,
        LEMMA_TOL,
    ));
    rep.push(CheckRecord::value(
        "ρ(Z₁, Z) = 2m",
        "ricci-reeb-values",
        p,
        geo.ricci_on(&z[0], &zsum),
        2.0 * mf,
        LEMMA_TOL,
    ));
    rep.push(CheckRecord::value(
        "ρ(Z₂, Z) = 2n",
        "ricci-reeb-values",
        p,
        geo.ricci_on(&z[1], &zsum),
        2.0 * nf,
        LEMMA_TOL,
    ));
    let h = &pr.h;
    rep.push(CheckRecord::residual(
        "ρ(JX, JY) = ρ(X, Y) on H",
        "ricci-reeb-values",
        p,
        max_abs(&(h.transpose() * (jm.transpose() * &ric * &jm - &ric) * h)),
        LEMMA_TOL,
    ));

    for i in 0..2 {
        rep.push(CheckRecord::residual(
            &format!("L_Z{} g = 0", i + 1),
            "killing-reeb",
            p,
            geo.lie_derivative_metric(&pt.reeb[i]).max_abs(),
            LEMMA_TOL,
        ));
    }
    Ok(rep)
}

/// All curvature identities at every sample point; refuses to run on an
/// invalid structure.
pub fn lemma_suite(cp: &ContactPairManifold) -> Result<Report> {
    lemma_suite_at(cp, None)
}

pub fn lemma_suite_at(cp: &ContactPairManifold, points: Option<usize>) -> Result<Report> {
    require_valid(cp, points)?;
    let mut rep = Report::new(cp.id());
    for p in cp.points(points) {
        rep.extend(lemma_records(&cp.at(&p)?)?);
    }
    Ok(rep)
}

/// `R(X, φX, φX, X)` for each unit X in T𝓕₂ ∩ H.
pub fn phi_sectional(pt: &ContactPoint) -> Result<Vec<f64>> {
    let pr = pt.projectors()?;
    let phi = pt.phi_v();
    Ok(pt
        .leaf_horizontal_vectors(&pr)
        .iter()
        .map(|x| {
            let px = &phi * x;
            pt.geometry.riemann_on(x, &px, &px, x)
        })
        .collect())
}
