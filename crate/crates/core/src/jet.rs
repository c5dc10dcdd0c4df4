//! Second-order forward-mode differentiation.
//!
//! A [`Jet2`] carries a value together with its gradient and Hessian with
//! respect to the `d` chart coordinates. Every operation propagates the
//! truncated Taylor expansion exactly, so polynomials of degree two or less
//! are differentiated without truncation error.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("seed index {index} out of range for dimension {dim}")]
pub struct SeedError {
    pub index: usize,
    pub dim: usize,
}

/// Value, gradient and (dense, symmetric) Hessian.
#[derive(Clone, PartialEq)]
pub struct Jet2 {
    val: f64,
    grad: Vec<f64>,
    hess: Vec<f64>,
}

impl fmt::Debug for Jet2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Jet2")
            .field("val", &self.val)
            .field("grad", &self.grad)
            .field("hess", &self.hess)
            .finish()
    }
}

impl Jet2 {
    /// The coordinate function `x_index` evaluated at `value`.
    pub fn seed(index: usize, value: f64, dim: usize) -> Result<Jet2, SeedError> {
        if index >= dim {
            return Err(SeedError { index, dim });
        }
        let mut j = Jet2::constant(value, dim);
        j.grad[index] = 1.0;
        Ok(j)
    }

    /// Seeds every coordinate of `point`.
    pub fn seed_point(point: &[f64]) -> Vec<Jet2> {
        let d = point.len();
        (0..d)
            .map(|i| Jet2::seed(i, point[i], d).expect("index in range"))
            .collect()
    }

    pub fn constant(value: f64, dim: usize) -> Jet2 {
        Jet2 {
            val: value,
            grad: vec![0.0; dim],
            hess: vec![0.0; dim * dim],
        }
    }

    /// Builds a jet from explicit parts; `hess` is row-major `dim × dim`.
    pub fn from_parts(val: f64, grad: Vec<f64>, hess: Vec<f64>) -> Jet2 {
        assert_eq!(hess.len(), grad.len() * grad.len(), "hessian shape");
        Jet2 { val, grad, hess }
    }

    pub fn dim(&self) -> usize {
        self.grad.len()
    }

    pub fn val(&self) -> f64 {
        self.val
    }

    pub fn grad(&self) -> &[f64] {
        &self.grad
    }

    pub fn hess(&self) -> &[f64] {
        &self.hess
    }

    pub fn d(&self, i: usize) -> f64 {
        self.grad[i]
    }

    pub fn dd(&self, i: usize, j: usize) -> f64 {
        self.hess[i * self.dim() + j]
    }

    /// Largest |H_ij − H_ji|.
    pub fn asymmetry(&self) -> f64 {
        let d = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..i {
                worst = worst.max((self.dd(i, j) - self.dd(j, i)).abs());
            }
        }
        worst
    }

    /// Chain rule for a scalar function with derivatives `f1`, `f2` at `self.val`.
    fn compose(&self, f0: f64, f1: f64, f2: f64) -> Jet2 {
        let d = self.dim();
        let grad = self.grad.iter().map(|g| f1 * g).collect();
        let mut hess = vec![0.0; d * d];
        for i in 0..d {
            for j in 0..d {
                hess[i * d + j] = f1 * self.hess[i * d + j] + f2 * self.grad[i] * self.grad[j];
            }
        }
        Jet2 { val: f0, grad, hess }
    }

    fn check_dim(&self, other: &Jet2) {
        debug_assert_eq!(self.dim(), other.dim(), "jet dimensions differ");
    }
}

impl Add for &Jet2 {
    type Output = Jet2;
    fn add(self, rhs: &Jet2) -> Jet2 {
        self.check_dim(rhs);
        Jet2 {
            val: self.val + rhs.val,
            grad: self.grad.iter().zip(&rhs.grad).map(|(a, b)| a + b).collect(),
            hess: self.hess.iter().zip(&rhs.hess).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Jet2 {
    type Output = Jet2;
    fn sub(self, rhs: &Jet2) -> Jet2 {
        self.check_dim(rhs);
        Jet2 {
            val: self.val - rhs.val,
            grad: self.grad.iter().zip(&rhs.grad).map(|(a, b)| a - b).collect(),
            hess: self.hess.iter().zip(&rhs.hess).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: &Jet2) -> Jet2 {
        self.check_dim(rhs);
        let d = self.dim();
        let (a, b) = (self, rhs);
        let grad = (0..d).map(|i| a.val * b.grad[i] + b.val * a.grad[i]).collect();
        let mut hess = vec![0.0; d * d];
        for i in 0..d {
            for j in 0..d {
                let k = i * d + j;
                hess[k] = a.val * b.hess[k] + b.val * a.hess[k] + (a.grad[i] * b.grad[j] + b.grad[i] * a.grad[j]);
            }
        }
        Jet2 {
            val: a.val * b.val,
            grad,
            hess,
        }
    }
}

impl Div for &Jet2 {
    type Output = Jet2;
    fn div(self, rhs: &Jet2) -> Jet2 {
        self.check_dim(rhs);
        let d = self.dim();
        let (a, b) = (self, rhs);
        let q = a.val / b.val;
        // a = q b, differentiated twice and solved for q's derivatives.
        let grad: Vec<f64> = (0..d).map(|i| (a.grad[i] - q * b.grad[i]) / b.val).collect();
        let mut hess = vec![0.0; d * d];
        for i in 0..d {
            for j in 0..d {
                let k = i * d + j;
                hess[k] = (a.hess[k] - q * b.hess[k] - (grad[i] * b.grad[j] + b.grad[i] * grad[j])) / b.val;
            }
        }
        Jet2 { val: q, grad, hess }
    }
}

impl Neg for &Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        Jet2 {
            val: -self.val,
            grad: self.grad.iter().map(|g| -g).collect(),
            hess: self.hess.iter().map(|h| -h).collect(),
        }
    }
}

macro_rules! by_value {
    ($tr:ident, $m:ident) => {
        impl $tr for Jet2 {
            type Output = Jet2;
            fn $m(self, rhs: Jet2) -> Jet2 {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Jet2> for Jet2 {
            type Output = Jet2;
            fn $m(self, rhs: &Jet2) -> Jet2 {
                (&self).$m(rhs)
            }
        }
    };
}

by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);
by_value!(Div, div);

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        -&self
    }
}

impl Scalar for Jet2 {
    fn value(&self) -> f64 {
        self.val
    }

    fn lift(&self, c: f64) -> Self {
        Jet2::constant(c, self.dim())
    }

    fn sin(&self) -> Self {
        let (s, c) = (self.val.sin(), self.val.cos());
        self.compose(s, c, -s)
    }

    fn cos(&self) -> Self {
        let (s, c) = (self.val.sin(), self.val.cos());
        self.compose(c, -s, -c)
    }

    fn tan(&self) -> Self {
        let t = self.val.tan();
        let sec2 = 1.0 + t * t;
        self.compose(t, sec2, 2.0 * t * sec2)
    }

    fn exp(&self) -> Self {
        let e = self.val.exp();
        self.compose(e, e, e)
    }

    fn ln(&self) -> Self {
        let x = self.val;
        self.compose(x.ln(), 1.0 / x, -1.0 / (x * x))
    }

    fn sqrt(&self) -> Self {
        let r = self.val.sqrt();
        self.compose(r, 0.5 / r, -0.25 / (r * self.val))
    }

    fn powf(&self, e: f64) -> Self {
        let x = self.val;
        let f0 = x.powf(e);
        let f1 = if e == 0.0 { 0.0 } else { e * x.powf(e - 1.0) };
        let f2 = if e == 0.0 || e == 1.0 {
            0.0
        } else {
            e * (e - 1.0) * x.powf(e - 2.0)
        };
        self.compose(f0, f1, f2)
    }
}
