//! Pointwise Riemannian geometry of a chart-defined metric.
//!
//! Conventions:
//!
//! * `R(X,Y)V = ∇_X∇_Y V − ∇_Y∇_X V − ∇_[X,Y] V` and `R(X,Y,V,W) = g(R(X,Y)V, W)`,
//!   so the unit sphere has `R(X,Y,Y,X) = +1` for orthonormal `X, Y`.
//! * Components are stored in slot order: `riemann.at4(i,j,k,l) = R(∂i,∂j,∂k,∂l)`,
//!   and the (1,3) form has the output vector in the last slot.
//! * `ρ(X,Y) = Σ_i R(e_i, X, Y, e_i)`, which is positive on spheres.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::expr::{derive, parse_with, EvalEnv, Expr, Func, Symbols};
use crate::jet::Jet2;
use crate::linalg;
use crate::tensor::{kulkarni_nomizu, TensorValue, Variance};

/// Pivot tolerance for Gram–Schmidt.
pub const FRAME_PIVOT: f64 = 1e-8;

/// Coordinate chart: ordered coordinate names, parameter values and the
/// interior sample points checks are run at.
#[derive(Debug, Clone, PartialEq)]
pub struct Chart {
    coords: Vec<String>,
    params: BTreeMap<String, f64>,
    sample_points: Vec<Vec<f64>>,
    singular_loci: Vec<String>,
}

impl Chart {
    pub fn new<I, S>(coords: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let coords: Vec<String> = coords.into_iter().map(Into::into).collect();
        if coords.len() < 2 {
            return Err(Error::DimensionTooSmall {
                needed: 2,
                dim: coords.len(),
            });
        }
        for (i, c) in coords.iter().enumerate() {
            if coords[..i].contains(c) {
                return Err(Error::Definition(format!("duplicate coordinate `{c}`")));
            }
        }
        Ok(Chart {
            coords,
            params: BTreeMap::new(),
            sample_points: Vec::new(),
            singular_loci: Vec::new(),
        })
    }

    pub fn with_param(mut self, name: impl Into<String>, value: f64) -> Self {
        self.params.insert(name.into(), value);
        self
    }

    pub fn with_sample_points(mut self, points: Vec<Vec<f64>>) -> Result<Self> {
        for p in &points {
            if p.len() != self.dim() {
                return Err(Error::Definition(format!(
                    "sample point has {} coordinates, chart has {}",
                    p.len(),
                    self.dim()
                )));
            }
        }
        self.sample_points = points;
        Ok(self)
    }

    pub fn with_singular_loci(mut self, loci: Vec<String>) -> Self {
        self.singular_loci = loci;
        self
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[String] {
        &self.coords
    }

    pub fn params(&self) -> &BTreeMap<String, f64> {
        &self.params
    }

    pub fn sample_points(&self) -> &[Vec<f64>] {
        &self.sample_points
    }

    pub fn singular_loci(&self) -> &[String] {
        &self.singular_loci
    }

    pub fn symbols(&self) -> Symbols {
        Symbols::new(self.coords.iter().cloned(), self.params.keys().cloned())
    }

    /// Parses an expression against this chart's declared names.
    pub fn parse(&self, src: &str) -> Result<Expr> {
        Ok(parse_with(src, &self.symbols())?)
    }

    pub fn env_f64(&self, p: &[f64]) -> EvalEnv<f64> {
        let mut env = EvalEnv::new();
        env.set_params(&self.params);
        for (name, v) in self.coords.iter().zip(p) {
            env.set_coord(name.clone(), *v);
        }
        env
    }

    /// Environment with every coordinate seeded as a jet at `p`.
    pub fn env_jet(&self, p: &[f64]) -> EvalEnv<Jet2> {
        let mut env = EvalEnv::new();
        env.set_params(&self.params);
        for (name, j) in self.coords.iter().zip(Jet2::seed_point(p)) {
            env.set_coord(name.clone(), j);
        }
        env
    }

    pub fn jet_proto(&self) -> Jet2 {
        Jet2::constant(0.0, self.dim())
    }

    pub fn eval_jets(&self, exprs: &[Expr], env: &EvalEnv<Jet2>) -> Result<Vec<Jet2>> {
        let proto = self.jet_proto();
        exprs.iter().map(|e| e.eval(env, &proto).map_err(Error::from)).collect()
    }
}

/// Symmetric metric stored as its upper triangle, with the symbolic first
/// partials precomputed so that jets reach second derivatives of Γ.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricField {
    dim: usize,
    upper: Vec<Expr>,
    partials: Vec<Vec<Expr>>,
}

fn upper_index(dim: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * dim - i * (i + 1) / 2 + j
}

impl MetricField {
    /// `upper` lists g_ij for i ≤ j row by row.
    pub fn new(chart: &Chart, upper: Vec<Expr>) -> Result<Self> {
        let d = chart.dim();
        if upper.len() != d * (d + 1) / 2 {
            return Err(Error::Definition(format!(
                "metric needs {} upper-triangle entries, got {}",
                d * (d + 1) / 2,
                upper.len()
            )));
        }
        let partials = chart
            .coords()
            .iter()
            .map(|c| upper.iter().map(|e| derive(e, c)).collect())
            .collect();
        Ok(MetricField {
            dim: d,
            upper,
            partials,
        })
    }

    pub fn diagonal(chart: &Chart, diag: Vec<Expr>) -> Result<Self> {
        let d = chart.dim();
        if diag.len() != d {
            return Err(Error::Definition("diagonal length".into()));
        }
        let mut upper = Vec::with_capacity(d * (d + 1) / 2);
        for i in 0..d {
            for j in i..d {
                upper.push(if i == j { diag[i].clone() } else { Expr::Const(0.0) });
            }
        }
        Self::new(chart, upper)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> &Expr {
        &self.upper[upper_index(self.dim, i, j)]
    }

    pub fn upper(&self) -> &[Expr] {
        &self.upper
    }

    /// Symbolic ∂_k g_ij.
    pub fn partial(&self, k: usize, i: usize, j: usize) -> &Expr {
        &self.partials[k][upper_index(self.dim, i, j)]
    }

    /// Full d×d jets of g at `p`.
    pub fn jets(&self, chart: &Chart, env: &EvalEnv<Jet2>) -> Result<Vec<Jet2>> {
        let up = chart.eval_jets(&self.upper, env)?;
        let d = self.dim;
        Ok((0..d * d).map(|k| up[upper_index(d, k / d, k % d)].clone()).collect())
    }

    /// Jets of ∂_k g_ij, indexed `[k][i*d + j]`.
    pub fn partial_jets(&self, chart: &Chart, env: &EvalEnv<Jet2>) -> Result<Vec<Vec<Jet2>>> {
        let d = self.dim;
        self.partials
            .iter()
            .map(|row| {
                let up = chart.eval_jets(row, env)?;
                Ok((0..d * d).map(|k| up[upper_index(d, k / d, k % d)].clone()).collect())
            })
            .collect()
    }

    pub fn value(&self, chart: &Chart, p: &[f64]) -> Result<DMatrix<f64>> {
        let env = chart.env_f64(p);
        let d = self.dim;
        let mut g = DMatrix::zeros(d, d);
        for i in 0..d {
            for j in i..d {
                let v = self.entry(i, j).eval_f64(&env)?;
                g[(i, j)] = v;
                g[(j, i)] = v;
            }
        }
        Ok(g)
    }
}

/// Vector field with closed-form contravariant components.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorFieldExpr(pub Vec<Expr>);

/// One-form with closed-form covariant components.
#[derive(Debug, Clone, PartialEq)]
pub struct OneFormExpr(pub Vec<Expr>);

/// (1,1) tensor field; component `[k*d + j]` is `A^k_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor11Expr(pub Vec<Expr>);

impl VectorFieldExpr {
    pub fn jets(&self, chart: &Chart, env: &EvalEnv<Jet2>) -> Result<Vec<Jet2>> {
        chart.eval_jets(&self.0, env)
    }

    pub fn coordinate(dim: usize, index: usize) -> Self {
        VectorFieldExpr(
            (0..dim)
                .map(|i| Expr::Const(if i == index { 1.0 } else { 0.0 }))
                .collect(),
        )
    }
}

impl OneFormExpr {
    pub fn jets(&self, chart: &Chart, env: &EvalEnv<Jet2>) -> Result<Vec<Jet2>> {
        chart.eval_jets(&self.0, env)
    }
}

impl Tensor11Expr {
    pub fn jets(&self, chart: &Chart, env: &EvalEnv<Jet2>) -> Result<Vec<Jet2>> {
        chart.eval_jets(&self.0, env)
    }
}

/// g, ∂g and ∂²g at a point: `dg[k][(i,j)] = ∂_k g_ij`, `ddg[k][l][(i,j)]`.
#[derive(Debug, Clone)]
pub struct MetricJet {
    pub g: DMatrix<f64>,
    pub dg: Vec<DMatrix<f64>>,
    pub ddg: Vec<Vec<DMatrix<f64>>>,
}

pub fn metric_jet(chart: &Chart, metric: &MetricField, p: &[f64]) -> Result<MetricJet> {
    let env = chart.env_jet(p);
    let jets = metric.jets(chart, &env)?;
    let d = chart.dim();
    let g = DMatrix::from_fn(d, d, |i, j| jets[i * d + j].val());
    linalg::check_positive_definite(&g)?;
    let dg = (0..d)
        .map(|k| DMatrix::from_fn(d, d, |i, j| jets[i * d + j].d(k)))
        .collect();
    let ddg = (0..d)
        .map(|k| {
            (0..d)
                .map(|l| DMatrix::from_fn(d, d, |i, j| jets[i * d + j].dd(k, l)))
                .collect()
        })
        .collect();
    Ok(MetricJet { g, dg, ddg })
}

/// Everything curvature-related at one point, computed once.
#[derive(Debug, Clone)]
pub struct PointGeometry {
    pub point: Vec<f64>,
    pub g: DMatrix<f64>,
    pub g_inv: DMatrix<f64>,
    /// Jets of g_ij, row-major.
    pub g_jets: Vec<Jet2>,
    /// Jets of g^ij, row-major.
    pub g_inv_jets: Vec<Jet2>,
    /// Γ^k_ij with slot order (k, i, j).
    pub christoffel: TensorValue,
    /// Jets of Γ^k_ij, same ordering; their gradients give ∂Γ.
    pub christoffel_jets: Vec<Jet2>,
    /// R(∂i,∂j)∂k = R_{ijk}^l ∂l with slot order (i, j, k, l).
    pub riemann_13: TensorValue,
    /// R(∂i,∂j,∂k,∂l).
    pub riemann: TensorValue,
    pub ricci: TensorValue,
    pub scalar: f64,
}

impl PointGeometry {
    pub fn compute(chart: &Chart, metric: &MetricField, p: &[f64]) -> Result<Self> {
        let d = chart.dim();
        let env = chart.env_jet(p);
        let g_jets = metric.jets(chart, &env)?;
        let g = DMatrix::from_fn(d, d, |i, j| g_jets[i * d + j].val());
        linalg::check_positive_definite(&g)?;
        let cond = linalg::condition_number(&g);
        if cond > linalg::CONDITION_WARNING {
            log::warn!("metric at {p:?} is ill-conditioned (condition number {cond:e})");
        }
        let g_inv_jets = linalg::invert_generic(&g_jets, d)?;
        let g_inv = DMatrix::from_fn(d, d, |i, j| g_inv_jets[i * d + j].val());
        let dg = metric.partial_jets(chart, &env)?;

        // Γ_{lij} = ½(∂_i g_jl + ∂_j g_il − ∂_l g_ij), then raise l.
        let half = Jet2::constant(0.5, d);
        let mut lowered = Vec::with_capacity(d * d * d);
        for l in 0..d {
            for i in 0..d {
                for j in 0..d {
                    let s = &(&dg[i][j * d + l] + &dg[j][i * d + l]) - &dg[l][i * d + j];
                    lowered.push(&half * &s);
                }
            }
        }
        let mut christoffel_jets = Vec::with_capacity(d * d * d);
        for k in 0..d {
            for i in 0..d {
                for j in 0..d {
                    let mut acc = Jet2::constant(0.0, d);
                    for l in 0..d {
                        acc = &acc + &(&g_inv_jets[k * d + l] * &lowered[(l * d + i) * d + j]);
                    }
                    christoffel_jets.push(acc);
                }
            }
        }
        let christoffel = TensorValue::from_fn(&[Variance::Up, Variance::Down, Variance::Down], d, p, |ix| {
            christoffel_jets[(ix[0] * d + ix[1]) * d + ix[2]].val()
        });
        let gam = |k: usize, i: usize, j: usize| christoffel.at3(k, i, j);
        let dgam = |m: usize, k: usize, i: usize, j: usize| christoffel_jets[(k * d + i) * d + j].d(m);

        let riemann_13 = TensorValue::from_fn(
            &[Variance::Down, Variance::Down, Variance::Down, Variance::Up],
            d,
            p,
            |ix| {
                let (i, j, k, l) = (ix[0], ix[1], ix[2], ix[3]);
                let mut v = dgam(i, l, j, k) - dgam(j, l, i, k);
                for m in 0..d {
                    v += gam(l, i, m) * gam(m, j, k) - gam(l, j, m) * gam(m, i, k);
                }
                v
            },
        );
        let riemann = riemann_13.lower_last(&g);
        let ricci = TensorValue::covariant2(d, p, |j, k| (0..d).map(|i| riemann_13.at4(i, j, k, i)).sum());
        let scalar = (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .map(|(i, j)| g_inv[(i, j)] * ricci.at2(i, j))
            .sum();

        Ok(PointGeometry {
            point: p.to_vec(),
            g,
            g_inv,
            g_jets,
            g_inv_jets,
            christoffel,
            christoffel_jets,
            riemann_13,
            riemann,
            ricci,
            scalar,
        })
    }

    pub fn dim(&self) -> usize {
        self.g.nrows()
    }

    /// ∂_m Γ^k_ij with slot order (m, k, i, j).
    pub fn christoffel_derivative(&self) -> TensorValue {
        let d = self.dim();
        TensorValue::from_fn(
            &[Variance::Down, Variance::Up, Variance::Down, Variance::Down],
            d,
            &self.point,
            |ix| self.christoffel_jets[(ix[1] * d + ix[2]) * d + ix[3]].d(ix[0]),
        )
    }

    pub fn inner(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        (x.transpose() * &self.g * y)[(0, 0)]
    }

    pub fn norm(&self, x: &DVector<f64>) -> f64 {
        self.inner(x, x).max(0.0).sqrt()
    }

    /// (∇g)_{kij} = ∂_k g_ij − Γ^m_ki g_mj − Γ^m_kj g_im; zero for Levi-Civita.
    pub fn metric_compatibility(&self) -> TensorValue {
        let d = self.dim();
        TensorValue::from_fn(&[Variance::Down; 3], d, &self.point, |ix| {
            let (k, i, j) = (ix[0], ix[1], ix[2]);
            let mut v = self.g_jets[i * d + j].d(k);
            for m in 0..d {
                v -= self.christoffel.at3(m, k, i) * self.g[(m, j)] + self.christoffel.at3(m, k, j) * self.g[(i, m)];
            }
            v
        })
    }

    /// ∇V with slot order (i, k): (∇_{∂i} V)^k.
    pub fn covariant_derivative_vector(&self, v: &[Jet2]) -> TensorValue {
        let d = self.dim();
        TensorValue::from_fn(&[Variance::Down, Variance::Up], d, &self.point, |ix| {
            let (i, k) = (ix[0], ix[1]);
            v[k].d(i) + (0..d).map(|m| self.christoffel.at3(k, i, m) * v[m].val()).sum::<f64>()
        })
    }

    /// ∇A for a (1,1) tensor with slot order (i, k, j): ((∇_{∂i} A) ∂j)^k.
    pub fn covariant_derivative_11(&self, a: &[Jet2]) -> TensorValue {
        let d = self.dim();
        TensorValue::from_fn(&[Variance::Down, Variance::Up, Variance::Down], d, &self.point, |ix| {
            let (i, k, j) = (ix[0], ix[1], ix[2]);
            let mut v = a[k * d + j].d(i);
            for m in 0..d {
                v += self.christoffel.at3(k, i, m) * a[m * d + j].val()
                    - self.christoffel.at3(m, i, j) * a[k * d + m].val();
            }
            v
        })
    }

    /// Lie derivative of g along `z`: (L_Z g)_ij.
    pub fn lie_derivative_metric(&self, z: &[Jet2]) -> TensorValue {
        let d = self.dim();
        TensorValue::covariant2(d, &self.point, |i, j| {
            let mut v = 0.0;
            for k in 0..d {
                v += z[k].val() * self.g_jets[i * d + j].d(k) + self.g[(k, j)] * z[k].d(i) + self.g[(i, k)] * z[k].d(j);
            }
            v
        })
    }

    /// `R(x, y, z, w)`.
    pub fn riemann_on(&self, x: &DVector<f64>, y: &DVector<f64>, z: &DVector<f64>, w: &DVector<f64>) -> f64 {
        self.riemann.apply4(x, y, z, w)
    }

    pub fn ricci_on(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        self.ricci.apply2(x, y)
    }

    /// Weyl conformal tensor (0,4).
    pub fn weyl(&self) -> Result<TensorValue> {
        let d = self.dim();
        if d < 4 {
            return Err(Error::DimensionTooSmall { needed: 4, dim: d });
        }
        let df = d as f64;
        let ric = self.ricci.to_matrix();
        let g_ric = kulkarni_nomizu(&self.g, &ric, &self.point);
        let g_g = kulkarni_nomizu(&self.g, &self.g, &self.point);
        let c1 = 1.0 / (df - 2.0);
        let c2 = self.scalar / (2.0 * (df - 1.0) * (df - 2.0));
        Ok(self.riemann.add(&g_ric.scale(c1)).sub(&g_g.scale(c2)))
    }

    /// Orthonormal frame at this point, preferring `preferred` in order.
    pub fn orthonormal_frame(&self, preferred: &[DVector<f64>]) -> Result<Vec<DVector<f64>>> {
        orthonormal_frame(&self.g, preferred)
    }
}

/// Christoffel symbols Γ^k_ij (slot order k, i, j).
pub fn christoffel(chart: &Chart, metric: &MetricField, p: &[f64]) -> Result<TensorValue> {
    Ok(PointGeometry::compute(chart, metric, p)?.christoffel)
}

/// (1,3) and (0,4) Riemann tensors.
pub fn riemann(chart: &Chart, metric: &MetricField, p: &[f64]) -> Result<(TensorValue, TensorValue)> {
    let pg = PointGeometry::compute(chart, metric, p)?;
    Ok((pg.riemann_13, pg.riemann))
}

pub fn ricci(chart: &Chart, metric: &MetricField, p: &[f64]) -> Result<TensorValue> {
    Ok(PointGeometry::compute(chart, metric, p)?.ricci)
}

pub fn scalar_curvature(chart: &Chart, metric: &MetricField, p: &[f64]) -> Result<f64> {
    Ok(PointGeometry::compute(chart, metric, p)?.scalar)
}

pub fn weyl(chart: &Chart, metric: &MetricField, p: &[f64]) -> Result<TensorValue> {
    if chart.dim() < 4 {
        return Err(Error::DimensionTooSmall {
            needed: 4,
            dim: chart.dim(),
        });
    }
    PointGeometry::compute(chart, metric, p)?.weyl()
}

/// Covariant derivative of a closed-form vector field, slot order (i, k).
pub fn covariant_derivative(
    chart: &Chart,
    metric: &MetricField,
    field: &VectorFieldExpr,
    p: &[f64],
) -> Result<TensorValue> {
    let pg = PointGeometry::compute(chart, metric, p)?;
    let v = field.jets(chart, &chart.env_jet(p))?;
    Ok(pg.covariant_derivative_vector(&v))
}

/// `[X, Y]^i = X^j ∂_j Y^i − Y^j ∂_j X^i` from jets.
pub fn lie_bracket_jets(x: &[Jet2], y: &[Jet2]) -> DVector<f64> {
    let d = x.len();
    DVector::from_fn(d, |i, _| {
        (0..d).map(|j| x[j].val() * y[i].d(j) - y[j].val() * x[i].d(j)).sum()
    })
}

pub fn lie_bracket(chart: &Chart, x: &VectorFieldExpr, y: &VectorFieldExpr, p: &[f64]) -> Result<TensorValue> {
    let env = chart.env_jet(p);
    let xj = x.jets(chart, &env)?;
    let yj = y.jets(chart, &env)?;
    Ok(TensorValue::from_vector(&lie_bracket_jets(&xj, &yj), Variance::Up, p))
}

/// Gram–Schmidt in the inner product `g`: preferred vectors first, then the
/// coordinate basis, skipping nearly dependent candidates.
pub fn orthonormal_frame(g: &DMatrix<f64>, preferred: &[DVector<f64>]) -> Result<Vec<DVector<f64>>> {
    let d = g.nrows();
    let inner = |a: &DVector<f64>, b: &DVector<f64>| (a.transpose() * g * b)[(0, 0)];
    let mut frame: Vec<DVector<f64>> = Vec::with_capacity(d);
    let candidates = preferred
        .iter()
        .cloned()
        .chain((0..d).map(|i| DVector::from_fn(d, |k, _| if k == i { 1.0 } else { 0.0 })));
    for cand in candidates {
        if frame.len() == d {
            break;
        }
        let scale = inner(&cand, &cand).sqrt();
        if scale == 0.0 {
            continue;
        }
        let mut v = cand / scale;
        // two passes of modified Gram–Schmidt
        for _ in 0..2 {
            for e in &frame {
                let c = inner(&v, e);
                v -= e * c;
            }
        }
        let n = inner(&v, &v).max(0.0).sqrt();
        if n < FRAME_PIVOT {
            continue;
        }
        frame.push(v / n);
    }
    if frame.len() < d {
        return Err(Error::FrameIncomplete {
            found: frame.len(),
            dim: d,
        });
    }
    Ok(frame)
}

/// Gram matrix of a frame.
pub fn frame_gram(g: &DMatrix<f64>, frame: &[DVector<f64>]) -> DMatrix<f64> {
    let n = frame.len();
    DMatrix::from_fn(n, n, |a, b| (frame[a].transpose() * g * &frame[b])[(0, 0)])
}

/// The metric `e^{2f} g`.
pub fn conformal_rescale(chart: &Chart, metric: &MetricField, f: &Expr) -> Result<MetricField> {
    let factor = Expr::call(Func::Exp, Expr::mul(Expr::Const(2.0), f.clone()));
    let upper = metric
        .upper()
        .iter()
        .map(|e| Expr::mul(factor.clone(), e.clone()))
        .collect();
    MetricField::new(chart, upper)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn flat(d: usize) -> (Chart, MetricField) {
        let names: Vec<String> = (0..d).map(|i| format!("x{i}")).collect();
        let chart = Chart::new(names).unwrap();
        let m = MetricField::diagonal(&chart, vec![Expr::Const(1.0); d]).unwrap();
        (chart, m)
    }

    fn s2() -> (Chart, MetricField) {
        let chart = Chart::new(["theta", "phi"]).unwrap();
        let m = MetricField::diagonal(&chart, vec![Expr::Const(1.0), parse("sin(theta)^2").unwrap()]).unwrap();
        (chart, m)
    }

    #[test]
    fn flat_metric_has_zero_derivatives_and_curvature() {
        let (chart, m) = flat(4);
        let p = [0.3, -0.2, 1.0, 0.5];
        let mj = metric_jet(&chart, &m, &p).unwrap();
        assert!(mj.dg.iter().all(|a| linalg::max_abs(a) == 0.0));
        assert!(mj.ddg.iter().flatten().all(|a| linalg::max_abs(a) == 0.0));
        let pg = PointGeometry::compute(&chart, &m, &p).unwrap();
        assert_eq!(pg.christoffel.max_abs(), 0.0);
        assert_eq!(pg.riemann.max_abs(), 0.0);
        assert_eq!(pg.ricci.max_abs(), 0.0);
        assert_eq!(pg.scalar, 0.0);
        assert_eq!(pg.weyl().unwrap().max_abs(), 0.0);
    }

    #[test]
    fn hopf_chart_metric_derivative() {
        let chart = Chart::new(["eta", "xi1", "xi2", "t"]).unwrap();
        let m = MetricField::diagonal(
            &chart,
            vec![
                Expr::Const(1.0),
                parse("cos(eta)^2").unwrap(),
                parse("sin(eta)^2").unwrap(),
                Expr::Const(1.0),
            ],
        )
        .unwrap();
        let eta = std::f64::consts::FRAC_PI_6;
        let mj = metric_jet(&chart, &m, &[eta, 0.1, 0.2, 0.0]).unwrap();
        assert!((mj.dg[0][(1, 1)] + 3f64.sqrt() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn sphere_christoffel() {
        let (chart, m) = s2();
        let gam = christoffel(&chart, &m, &[std::f64::consts::FRAC_PI_4, 0.3]).unwrap();
        // Γ^θ_φφ = −sinθ cosθ
        assert!((gam.at3(0, 1, 1) + 0.5).abs() < 1e-15);
        // Γ^φ_θφ = cotθ
        assert!((gam.at3(1, 0, 1) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn sphere_curvature_sign() {
        let (chart, m) = s2();
        let p = [0.7, 0.1];
        let pg = PointGeometry::compute(&chart, &m, &p).unwrap();
        let frame = pg.orthonormal_frame(&[]).unwrap();
        let k = pg.riemann_on(&frame[0], &frame[1], &frame[1], &frame[0]);
        assert!((k - 1.0).abs() < 1e-12, "{k}");
        assert!((pg.scalar - 2.0).abs() < 1e-12);
    }

    #[test]
    fn weyl_needs_four_dimensions() {
        let (chart, m) = s2();
        assert!(matches!(
            weyl(&chart, &m, &[0.7, 0.1]),
            Err(Error::DimensionTooSmall { needed: 4, dim: 2 })
        ));
    }

    #[test]
    fn lie_brackets() {
        let chart = Chart::new(["x", "y"]).unwrap();
        let dx = VectorFieldExpr::coordinate(2, 0);
        let dy = VectorFieldExpr::coordinate(2, 1);
        let b = lie_bracket(&chart, &dx, &dy, &[0.2, 0.4]).unwrap();
        assert_eq!(b.max_abs(), 0.0);
        let x_dy = VectorFieldExpr(vec![Expr::Const(0.0), Expr::coord("x")]);
        let b = lie_bracket(&chart, &x_dy, &dx, &[0.2, 0.4]).unwrap();
        assert_eq!(b.data(), &[0.0, -1.0]);
    }

    #[test]
    fn constant_field_parallel_on_flat_chart() {
        let (chart, m) = flat(3);
        let v = VectorFieldExpr(vec![Expr::Const(1.0), Expr::Const(-2.0), Expr::Const(0.5)]);
        let dv = covariant_derivative(&chart, &m, &v, &[0.1, 0.2, 0.3]).unwrap();
        assert_eq!(dv.max_abs(), 0.0);
    }

    #[test]
    fn frame_on_flat_metric_is_standard_basis() {
        let frame = orthonormal_frame(&DMatrix::identity(3, 3), &[]).unwrap();
        for (i, e) in frame.iter().enumerate() {
            for k in 0..3 {
                assert_eq!(e[k], if i == k { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn frame_degenerate_metric_is_incomplete() {
        let g = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 1.0]);
        assert!(matches!(
            orthonormal_frame(&g, &[]),
            Err(Error::FrameIncomplete { found: 1, dim: 2 })
        ));
    }

    #[test]
    fn zero_conformal_factor_is_identity() {
        let (chart, m) = s2();
        let r = conformal_rescale(&chart, &m, &Expr::Const(0.0)).unwrap();
        assert_eq!(r, m);
    }

    #[test]
    fn metric_must_be_positive_definite() {
        let chart = Chart::new(["x", "y"]).unwrap();
        let m = MetricField::diagonal(&chart, vec![Expr::Const(1.0), parse("x").unwrap()]).unwrap();
        assert!(matches!(
            PointGeometry::compute(&chart, &m, &[-1.0, 0.0]),
            Err(Error::NotPositiveDefinite { .. })
        ));
    }
}
