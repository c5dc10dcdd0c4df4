//! Bochner curvature tensors of an almost Hermitian structure `(g, J)`:
//! π₁, π₂, `L₃`, the φ(S)/ψ(S) builders, curvature contractions and the
//! assembled tensor in the general and complex-dimension-2 regimes.

use nalgebra::{DMatrix, DVector};

use crate::contact::{ContactPairManifold, ContactPoint, Structure, EXACT_TOL};
use crate::conventions::{NotationReading, NOTATION_READING};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::linalg::max_abs;
use crate::report::{CheckRecord, Report};
use crate::riemann::{conformal_rescale, frame_gram, PointGeometry};
use crate::tensor::{TensorValue, Variance};

pub const CONFORMAL_TOL: f64 = 1e-7;
pub const FRAME_TOL: f64 = 1e-9;

/// Which printed formula assembles B.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// Complex dimension `m+n+1 > 2`.
    General,
    /// Real dimension 4.
    Dim4,
}

impl Regime {
    pub fn for_dim(d: usize) -> Regime {
        if d == 4 {
            Regime::Dim4
        } else {
            Regime::General
        }
    }
}

/// Everything the Bochner assembly needs at one point.
#[derive(Debug, Clone)]
pub struct CurvatureContext {
    pub point: Vec<f64>,
    pub g: DMatrix<f64>,
    /// `J^k_j` acting on column vectors.
    pub j: DMatrix<f64>,
    pub riemann: TensorValue,
    pub frame: Vec<DVector<f64>>,
    pub pair_type: (usize, usize),
    pub reading: NotationReading,
    /// `Σ e_i e_iᵀ` of the frame.
    frame_sum: DMatrix<f64>,
}

impl CurvatureContext {
    pub fn new(
        g: DMatrix<f64>,
        j: DMatrix<f64>,
        riemann: TensorValue,
        frame: Vec<DVector<f64>>,
        pair_type: (usize, usize),
    ) -> Result<Self> {
        let d = g.nrows();
        let mut problems = Vec::new();
        let orth = max_abs(&(j.transpose() * &g * &j - &g));
        if !(orth < EXACT_TOL) {
            problems.push(format!("J is not g-orthogonal (residual {orth:e})"));
        }
        let gram = max_abs(&(frame_gram(&g, &frame) - DMatrix::identity(frame.len(), frame.len())));
        if frame.len() != d || !(gram < FRAME_TOL) {
            problems.push(format!("frame is not orthonormal (residual {gram:e})"));
        }
        if !problems.is_empty() {
            return Err(Error::StructureInvalid(problems));
        }
        let frame_sum = frame
            .iter()
            .fold(DMatrix::zeros(d, d), |acc, e| acc + e * e.transpose());
        Ok(CurvatureContext {
            point: riemann.point().to_vec(),
            g,
            j,
            riemann,
            frame,
            pair_type,
            reading: NOTATION_READING,
            frame_sum,
        })
    }

    /// Context for `J` or `T` of a contact pair, frame starting at Z₁, Z₂.
    pub fn from_contact(pt: &ContactPoint, which: Structure) -> Result<Self> {
        Self::new(
            pt.g().clone(),
            pt.structure_v(which),
            pt.geometry.riemann.clone(),
            pt.frame()?,
            pt.pair_type,
        )
    }

    pub fn with_reading(mut self, reading: NotationReading) -> Self {
        self.reading = reading;
        self
    }

    pub fn with_frame(self, frame: Vec<DVector<f64>>) -> Result<Self> {
        let reading = self.reading;
        Ok(Self::new(self.g, self.j, self.riemann, frame, self.pair_type)?.with_reading(reading))
    }

    /// Same `g`, `J` and frame with a different curvature tensor.
    pub fn with_riemann(&self, riemann: TensorValue) -> Self {
        CurvatureContext {
            riemann,
            ..self.clone()
        }
    }

    pub fn dim(&self) -> usize {
        self.g.nrows()
    }

    fn t4(&self, f: impl FnMut(usize, usize, usize, usize) -> f64) -> TensorValue {
        TensorValue::covariant4(self.dim(), &self.point, f)
    }

    fn t2(&self, m: &DMatrix<f64>) -> TensorValue {
        TensorValue::from_matrix(m, [Variance::Down, Variance::Down], &self.point)
    }
}

/// `π₁(X,Y,Z,W) = g(X,Z)g(Y,W) − g(Y,Z)g(X,W)`.
pub fn pi1(ctx: &CurvatureContext) -> TensorValue {
    let g = &ctx.g;
    ctx.t4(|i, j, k, l| g[(i, k)] * g[(j, l)] - g[(j, k)] * g[(i, l)])
}

/// `π₂(X,Y,Z,W) = 2g(JX,Y)g(JZ,W) + g(JX,Z)g(JY,W) − g(JY,Z)g(JX,W)`.
pub fn pi2(ctx: &CurvatureContext) -> TensorValue {
    // w[(x, y)] = g(J∂x, ∂y)
    let w = ctx.j.transpose() * &ctx.g;
    ctx.t4(|i, j, k, l| 2.0 * w[(i, j)] * w[(k, l)] + w[(i, k)] * w[(j, l)] - w[(j, k)] * w[(i, l)])
}

/// `(L₃T)(X,Y,Z,W) = T(JX,JY,JZ,JW)`.
pub fn l3(ctx: &CurvatureContext, t: &TensorValue) -> TensorValue {
    let d = ctx.dim();
    let j = &ctx.j;
    let mut cur = t.clone();
    // substitute one slot at a time
    for slot in 0..4 {
        let prev = cur.clone();
        cur = TensorValue::from_fn(&[Variance::Down; 4], d, &ctx.point, |ix| {
            let mut idx = [ix[0], ix[1], ix[2], ix[3]];
            let target = idx[slot];
            let mut v = 0.0;
            for a in 0..d {
                let c = j[(a, target)];
                if c != 0.0 {
                    idx[slot] = a;
                    v += c * prev.at4(idx[0], idx[1], idx[2], idx[3]);
                }
            }
            v
        });
    }
    cur
}

/// `φ(S)(X,Y,Z,W) = g(X,Z)S(Y,W) + g(Y,W)S(X,Z) − g(X,W)S(Y,Z) − g(Y,Z)S(X,W)`.
pub fn phi_op(s: &TensorValue, ctx: &CurvatureContext) -> TensorValue {
    let g = &ctx.g;
    let s = s.to_matrix();
    ctx.t4(|i, j, k, l| g[(i, k)] * s[(j, l)] + g[(j, l)] * s[(i, k)] - g[(i, l)] * s[(j, k)] - g[(j, k)] * s[(i, l)])
}

/// `ψ(S)(X,Y,Z,W) = 2g(X,JY)S(Z,JW) + 2g(Z,JW)S(X,JY) + g(X,JZ)S(Y,JW)
///  + g(Y,JW)S(X,JZ) − g(X,JW)S(Y,JZ) − g(Y,JZ)S(X,JW)`.
pub fn psi_op(s: &TensorValue, ctx: &CurvatureContext) -> TensorValue {
    let a = &ctx.g * &ctx.j;
    let sj = s.to_matrix() * &ctx.j;
    ctx.t4(|i, j, k, l| {
        2.0 * a[(i, j)] * sj[(k, l)] + 2.0 * a[(k, l)] * sj[(i, j)] + a[(i, k)] * sj[(j, l)] + a[(j, l)] * sj[(i, k)]
            - a[(i, l)] * sj[(j, k)]
            - a[(j, k)] * sj[(i, l)]
    })
}

/// `ρ(T)(Y,Z) = Σ_i T(e_i, Y, Z, e_i)`.
pub fn contract_ricci(t: &TensorValue, ctx: &CurvatureContext) -> TensorValue {
    let d = ctx.dim();
    let f = &ctx.frame_sum;
    let m = DMatrix::from_fn(d, d, |j, k| {
        let mut v = 0.0;
        for p in 0..d {
            for q in 0..d {
                v += f[(p, q)] * t.at4(p, j, k, q);
            }
        }
        v
    });
    ctx.t2(&m)
}

/// `ρ*(T)(X,Y) = Σ_i T(X, e_i, J e_i, J Y)`.
pub fn contract_star(t: &TensorValue, ctx: &CurvatureContext) -> TensorValue {
    let d = ctx.dim();
    let j = &ctx.j;
    // fj[(p, r)] = Σ_q F_pq J^r_q
    let fj = &ctx.frame_sum * j.transpose();
    let m = DMatrix::from_fn(d, d, |a, b| {
        let mut v = 0.0;
        for p in 0..d {
            for r in 0..d {
                let c = fj[(p, r)];
                if c == 0.0 {
                    continue;
                }
                for s in 0..d {
                    v += c * t.at4(a, p, r, s) * j[(s, b)];
                }
            }
        }
        v
    });
    ctx.t2(&m)
}

/// `Σ_i S(e_i, e_i)`.
pub fn trace(s: &TensorValue, ctx: &CurvatureContext) -> f64 {
    ctx.frame_sum.component_mul(&s.to_matrix()).sum()
}

fn combo(terms: &[(f64, &TensorValue)]) -> TensorValue {
    let mut out = terms[0].1.scale(terms[0].0);
    for (c, t) in &terms[1..] {
        out = out.zip_with(t, |a, b| a + c * b);
    }
    out
}

/// The Bochner tensor of `ctx.riemann` for `(g, J)`.
pub fn bochner(ctx: &CurvatureContext, regime: Regime) -> Result<TensorValue> {
    let d = ctx.dim();
    let (m, n) = ctx.pair_type;
    let nf = (m + n) as f64;
    match regime {
        Regime::Dim4 if d != 4 => {
            return Err(Error::RegimeMismatch(format!(
                "the dimension-4 formula needs d = 4, chart has d = {d}"
            )))
        }
        Regime::General if m + n < 2 => {
            return Err(Error::RegimeMismatch(format!(
                "the general formula needs complex dimension m+n+1 > 2, got {}",
                m + n + 1
            )))
        }
        _ => {}
    }
    let r = &ctx.riemann;
    let lr = l3(ctx, r);
    let minus = r.sub(&lr);
    let plus = r.add(&lr);
    let (rho_m, star_m, rho_p, star_p) = match ctx.reading {
        NotationReading::ContractBracket => (
            contract_ricci(&minus, ctx),
            contract_star(&minus, ctx),
            contract_ricci(&plus, ctx),
            contract_star(&plus, ctx),
        ),
        NotationReading::ContractCurvature => {
            let rho = contract_ricci(r, ctx);
            let star = contract_star(r, ctx);
            (rho.clone(), star.clone(), rho, star)
        }
    };
    let tau = trace(&contract_ricci(r, ctx), ctx);
    let tau_star = trace(&contract_star(r, ctx), ctx);
    let p1 = pi1(ctx);
    let p2 = pi2(ctx);

    let psi_star = psi_op(&star_m, ctx);
    let phi_rho = phi_op(&rho_m, ctx);
    let s_sum = combo(&[(1.0, &rho_p), (3.0, &star_p)]);
    let sum_term = phi_op(&s_sum, ctx).add(&psi_op(&s_sum, ctx));
    let p_sum = p1.add(&p2);
    let p_diff = combo(&[(3.0, &p1), (-1.0, &p2)]);

    let b = match regime {
        Regime::General => {
            let s_diff = combo(&[(1.0, &rho_p), (-1.0, &star_p)]);
            let diff_term = combo(&[(3.0, &phi_op(&s_diff, ctx)), (-1.0, &psi_op(&s_diff, ctx))]);
            combo(&[
                (1.0, r),
                (1.0 / (4.0 * (nf + 2.0)), &psi_star),
                (1.0 / (4.0 * nf), &phi_rho),
                (1.0 / (16.0 * (nf + 3.0)), &sum_term),
                (1.0 / (16.0 * (nf - 1.0)), &diff_term),
                (-(tau + 3.0 * tau_star) / (16.0 * (nf + 2.0) * (nf + 3.0)), &p_sum),
                (-(tau - tau_star) / (16.0 * (nf - 1.0) * nf), &p_diff),
            ])
        }
        Regime::Dim4 => combo(&[
            (1.0, r),
            (1.0 / 12.0, &psi_star),
            (1.0 / 4.0, &phi_rho),
            (1.0 / 64.0, &sum_term),
            (-(tau + 3.0 * tau_star) / 192.0, &p_sum),
            ((tau - tau_star) / 32.0, &p_diff),
        ]),
    };
    Ok(b)
}

/// `(B_J, B_T)` at one point, same `(m, n)` for both.
pub fn bochner_pair(cp: &ContactPairManifold, p: &[f64]) -> Result<(TensorValue, TensorValue)> {
    let pt = cp.at(p)?;
    bochner_pair_at(&pt)
}

pub fn bochner_pair_at(pt: &ContactPoint) -> Result<(TensorValue, TensorValue)> {
    let regime = Regime::for_dim(pt.dim());
    let bj = bochner(&CurvatureContext::from_contact(pt, Structure::J)?, regime)?;
    let bt = bochner(&CurvatureContext::from_contact(pt, Structure::T)?, regime)?;
    Ok((bj, bt))
}

/// Bochner tensor of `e^{2f} g` with the structure `which` of the
/// original metric, in (1,3) variance, next to the original.
pub fn conformal_pair(
    cp: &ContactPairManifold,
    f: &Expr,
    p: &[f64],
    which: Structure,
) -> Result<(TensorValue, TensorValue)> {
    let pt = cp.at(p)?;
    let regime = Regime::for_dim(pt.dim());
    let ctx = CurvatureContext::from_contact(&pt, which)?;
    let b = bochner(&ctx, regime)?.raise_last(&pt.geometry.g_inv);

    let metric = conformal_rescale(cp.chart(), cp.metric(), f)?;
    let geo = PointGeometry::compute(cp.chart(), &metric, p)?;
    let frame = geo.orthonormal_frame(&[pt.reeb_v(0), pt.reeb_v(1)])?;
    let ctx2 = CurvatureContext::new(geo.g.clone(), ctx.j.clone(), geo.riemann.clone(), frame, pt.pair_type)?
        .with_reading(ctx.reading);
    let b2 = bochner(&ctx2, regime)?.raise_last(&geo.g_inv);
    Ok((b, b2))
}

/// Compares the (1,3) Bochner tensor before and after `g → e^{2f}g`.
/// Asserted for constant `f`, recorded otherwise.
pub fn conformal_invariance_check(cp: &ContactPairManifold, f: &Expr, points: Option<usize>) -> Result<Report> {
    if cp.dim() < 4 {
        return Err(Error::DimensionTooSmall {
            needed: 4,
            dim: cp.dim(),
        });
    }
    let mut rep = Report::new(cp.id());
    let constant = f.is_coordinate_free();
    for p in cp.points(points) {
        let (b, b2) = conformal_pair(cp, f, &p, Structure::J)?;
        let diff = b.max_diff(&b2);
        let name = format!("B_J (1,3) under g → exp(2·({f}))·g");
        rep.push(if constant {
            CheckRecord::residual(&name, "bochner-conformal-invariance", Some(&p), diff, CONFORMAL_TOL)
        } else {
            CheckRecord::info(&name, "bochner-conformal-invariance", Some(&p), diff)
        });
    }
    Ok(rep)
}

/// Largest `‖B_J‖∞` on hopf(1) and hopf(2) under each notation reading.
pub fn pin_notation_reading(tol: f64) -> Result<crate::catalog::Pin<NotationReading>> {
    let mut pin = crate::catalog::Pin {
        candidates: Vec::new(),
        passing: Vec::new(),
    };
    let models = [crate::catalog::hopf(1)?, crate::catalog::hopf(2)?];
    for reading in [NotationReading::ContractBracket, NotationReading::ContractCurvature] {
        let mut worst = 0.0f64;
        for cp in &models {
            for p in cp.points(None) {
                let pt = cp.at(&p)?;
                let ctx = CurvatureContext::from_contact(&pt, Structure::J)?.with_reading(reading);
                worst = worst.max(bochner(&ctx, Regime::for_dim(pt.dim()))?.max_abs());
            }
        }
        pin.candidates.push((reading, worst));
        if worst < tol {
            pin.passing.push(reading);
        }
    }
    Ok(pin)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flat_ctx() -> CurvatureContext {
        let g = DMatrix::identity(4, 4);
        // J e0 = e1, J e2 = e3
        let mut j = DMatrix::zeros(4, 4);
        j[(1, 0)] = 1.0;
        j[(0, 1)] = -1.0;
        j[(3, 2)] = 1.0;
        j[(2, 3)] = -1.0;
        let frame = (0..4)
            .map(|i| DVector::from_fn(4, |k, _| if k == i { 1.0 } else { 0.0 }))
            .collect();
        CurvatureContext::new(
            g,
            j,
            TensorValue::zeros(&[Variance::Down; 4], 4, &[0.0; 4]),
            frame,
            (1, 0),
        )
        .unwrap()
    }

    #[test]
    fn pi_values_on_standard_structure() {
        let ctx = flat_ctx();
        assert_eq!(pi1(&ctx).at4(0, 1, 0, 1), 1.0);
        assert_eq!(pi2(&ctx).at4(0, 1, 0, 1), 3.0);
    }

    #[test]
    fn operators_on_metric() {
        let ctx = flat_ctx();
        let g = ctx.t2(&ctx.g.clone());
        assert!(phi_op(&g, &ctx).max_diff(&pi1(&ctx).scale(2.0)) < 1e-15);
        assert!(psi_op(&g, &ctx).max_diff(&pi2(&ctx).scale(2.0)) < 1e-15);
        let zero = ctx.t2(&DMatrix::zeros(4, 4));
        assert_eq!(phi_op(&zero, &ctx).max_abs(), 0.0);
        assert_eq!(psi_op(&zero, &ctx).max_abs(), 0.0);
    }

    #[test]
    fn l3_twice_is_identity() {
        let ctx = flat_ctx();
        let t = ctx.t4(|i, j, k, l| (i + 2 * j) as f64 - (k * l) as f64 * 0.5);
        assert!(l3(&ctx, &l3(&ctx, &t)).max_diff(&t) < 1e-15);
        assert!(l3(&ctx, &pi1(&ctx)).max_diff(&pi1(&ctx)) < 1e-15);
    }

    #[test]
    fn regime_gates() {
        let ctx = flat_ctx();
        assert!(matches!(bochner(&ctx, Regime::General), Err(Error::RegimeMismatch(_))));
        assert!(bochner(&ctx, Regime::Dim4).is_ok());
    }

    #[test]
    fn non_orthogonal_structure_rejected() {
        let ctx = flat_ctx();
        let j = ctx.j.scale(2.0);
        assert!(matches!(
            CurvatureContext::new(ctx.g.clone(), j, ctx.riemann.clone(), ctx.frame.clone(), (1, 0)),
            Err(Error::StructureInvalid(_))
        ));
    }
}
