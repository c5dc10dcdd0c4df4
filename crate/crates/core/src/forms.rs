//! Exterior derivatives of closed-form one-forms and pointwise exterior
//! algebra on multi-index (bitmask) arrays.

use nalgebra::{DMatrix, DVector};

use crate::error::Result;
use crate::expr::{derive, EvalEnv, Expr};
use crate::jet::Jet2;
use crate::riemann::{Chart, OneFormExpr};

/// Antisymmetric 2-form with closed-form components `[i*d + j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoFormExpr {
    dim: usize,
    comps: Vec<Expr>,
}

impl TwoFormExpr {
    pub fn component(&self, i: usize, j: usize) -> &Expr {
        &self.comps[i * self.dim + j]
    }

    pub fn jets(&self, chart: &Chart, env: &EvalEnv<Jet2>) -> Result<Vec<Jet2>> {
        chart.eval_jets(&self.comps, env)
    }

    pub fn value(&self, chart: &Chart, p: &[f64]) -> Result<DMatrix<f64>> {
        let env = chart.env_f64(p);
        let d = self.dim;
        let mut m = DMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                m[(i, j)] = self.component(i, j).eval_f64(&env)?;
            }
        }
        Ok(m)
    }
}

/// `(dα)_ij = s·(∂_i α_j − ∂_j α_i)`.
pub fn exterior_derivative(chart: &Chart, alpha: &OneFormExpr, s: f64) -> TwoFormExpr {
    let d = chart.dim();
    let coords = chart.coords();
    let mut comps = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let c = if i == j {
                Expr::Const(0.0)
            } else {
                Expr::mul(
                    Expr::Const(s),
                    Expr::sub(derive(&alpha.0[j], &coords[i]), derive(&alpha.0[i], &coords[j])),
                )
            };
            comps.push(c);
        }
    }
    TwoFormExpr { dim: d, comps }
}

/// A k-form at a point, stored densely over index subsets encoded as
/// bitmasks: coefficient `c[I]` multiplies `dx^{i1}∧…∧dx^{ik}` with
/// `i1 < … < ik` the set bits of `I`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointForm {
    dim: usize,
    degree: usize,
    coeffs: Vec<f64>,
}

impl PointForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        assert!(dim <= 16, "dimension too large for bitmask forms");
        PointForm {
            dim,
            degree,
            coeffs: vec![0.0; 1 << dim],
        }
    }

    pub fn one_form(v: &DVector<f64>) -> Self {
        let mut f = PointForm::zero(v.len(), 1);
        for i in 0..v.len() {
            f.coeffs[1 << i] = v[i];
        }
        f
    }

    /// From an antisymmetric matrix `a_ij = ω(∂i, ∂j)`.
    pub fn two_form(a: &DMatrix<f64>) -> Self {
        let d = a.nrows();
        let mut f = PointForm::zero(d, 2);
        for i in 0..d {
            for j in i + 1..d {
                f.coeffs[(1 << i) | (1 << j)] = a[(i, j)];
            }
        }
        f
    }

    /// The scalar 1 as a 0-form.
    pub fn unit(dim: usize) -> Self {
        let mut f = PointForm::zero(dim, 0);
        f.coeffs[0] = 1.0;
        f
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn wedge(&self, other: &PointForm) -> PointForm {
        assert_eq!(self.dim, other.dim);
        let mut out = PointForm::zero(self.dim, self.degree + other.degree);
        if out.degree > self.dim {
            return out;
        }
        for (a, &ca) in self.coeffs.iter().enumerate() {
            if ca == 0.0 || (a as u32).count_ones() as usize != self.degree {
                continue;
            }
            for (b, &cb) in other.coeffs.iter().enumerate() {
                if cb == 0.0 || a & b != 0 || (b as u32).count_ones() as usize != other.degree {
                    continue;
                }
                out.coeffs[a | b] += permutation_sign(a, b) * ca * cb;
            }
        }
        out
    }

    pub fn power(&self, k: usize) -> PointForm {
        (0..k).fold(PointForm::unit(self.dim), |acc, _| acc.wedge(self))
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()))
    }

    /// Coefficient of `dx^0∧…∧dx^{d−1}`.
    pub fn top_coefficient(&self) -> f64 {
        self.coeffs[(1usize << self.dim) - 1]
    }
}

/// Sign of the shuffle merging sorted index sets `a` then `b`.
fn permutation_sign(a: usize, b: usize) -> f64 {
    let mut inversions = 0u32;
    let mut bits = a;
    while bits != 0 {
        let i = bits.trailing_zeros();
        inversions += (b & ((1usize << i) - 1)).count_ones();
        bits &= bits - 1;
    }
    if inversions.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}
