//! Pointwise tensor values with an explicit variance signature.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variance {
    Up,
    Down,
}

/// Dense multi-index array at a base point. Index order is row-major over
/// the slots in the order given by `variance`.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorValue {
    variance: Vec<Variance>,
    dim: usize,
    data: Vec<f64>,
    point: Vec<f64>,
}

impl TensorValue {
    pub fn zeros(variance: &[Variance], dim: usize, point: &[f64]) -> Self {
        TensorValue {
            variance: variance.to_vec(),
            dim,
            data: vec![0.0; dim.pow(variance.len() as u32)],
            point: point.to_vec(),
        }
    }

    pub fn from_fn(variance: &[Variance], dim: usize, point: &[f64], mut f: impl FnMut(&[usize]) -> f64) -> Self {
        let mut t = Self::zeros(variance, dim, point);
        let rank = variance.len();
        let mut idx = vec![0usize; rank];
        for k in 0..t.data.len() {
            let mut rem = k;
            for slot in (0..rank).rev() {
                idx[slot] = rem % dim;
                rem /= dim;
            }
            t.data[k] = f(&idx);
        }
        t
    }

    /// All-covariant rank-4 tensor from a component function.
    pub fn covariant4(dim: usize, point: &[f64], mut f: impl FnMut(usize, usize, usize, usize) -> f64) -> Self {
        Self::from_fn(&[Variance::Down; 4], dim, point, |i| f(i[0], i[1], i[2], i[3]))
    }

    pub fn covariant2(dim: usize, point: &[f64], mut f: impl FnMut(usize, usize) -> f64) -> Self {
        Self::from_fn(&[Variance::Down; 2], dim, point, |i| f(i[0], i[1]))
    }

    pub fn from_matrix(m: &DMatrix<f64>, variance: [Variance; 2], point: &[f64]) -> Self {
        Self::from_fn(&variance, m.nrows(), point, |i| m[(i[0], i[1])])
    }

    pub fn from_vector(v: &DVector<f64>, variance: Variance, point: &[f64]) -> Self {
        Self::from_fn(&[variance], v.len(), point, |i| v[i[0]])
    }

    pub fn variance(&self) -> &[Variance] {
        &self.variance
    }

    pub fn rank(&self) -> usize {
        self.variance.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self) -> &[f64] {
        &self.point
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank());
        idx.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: f64) {
        let o = self.offset(idx);
        self.data[o] = v;
    }

    #[inline]
    pub fn at2(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn at3(&self, i: usize, j: usize, k: usize) -> f64 {
        self.data[(i * self.dim + j) * self.dim + k]
    }

    #[inline]
    pub fn at4(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        let d = self.dim;
        self.data[((i * d + j) * d + k) * d + l]
    }

    pub fn to_matrix(&self) -> DMatrix<f64> {
        assert_eq!(self.rank(), 2);
        DMatrix::from_fn(self.dim, self.dim, |i, j| self.at2(i, j))
    }

    pub fn to_vector(&self) -> DVector<f64> {
        assert_eq!(self.rank(), 1);
        DVector::from_column_slice(&self.data)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |acc, v| acc.max(v.abs()))
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        let mut t = self.clone();
        t.data.iter_mut().for_each(|v| *v = f(*v));
        t
    }

    pub fn scale(&self, c: f64) -> Self {
        self.map(|v| c * v)
    }

    pub fn zip_with(&self, other: &TensorValue, f: impl Fn(f64, f64) -> f64) -> Self {
        assert_eq!(self.variance, other.variance, "variance mismatch");
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut t = self.clone();
        for (a, b) in t.data.iter_mut().zip(&other.data) {
            *a = f(*a, *b);
        }
        t
    }

    pub fn add(&self, other: &TensorValue) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &TensorValue) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    /// Largest componentwise difference.
    pub fn max_diff(&self, other: &TensorValue) -> f64 {
        self.sub(other).max_abs()
    }

    /// `T(x, y)` for a rank-2 tensor.
    pub fn apply2(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        let d = self.dim;
        let mut s = 0.0;
        for i in 0..d {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..d {
                s += self.at2(i, j) * x[i] * y[j];
            }
        }
        s
    }

    /// `T(x, y, z, w)` for a rank-4 tensor.
    pub fn apply4(&self, x: &DVector<f64>, y: &DVector<f64>, z: &DVector<f64>, w: &DVector<f64>) -> f64 {
        let d = self.dim;
        let mut s = 0.0;
        for i in 0..d {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..d {
                if y[j] == 0.0 {
                    continue;
                }
                for k in 0..d {
                    if z[k] == 0.0 {
                        continue;
                    }
                    let c = x[i] * y[j] * z[k];
                    for l in 0..d {
                        s += c * self.at4(i, j, k, l) * w[l];
                    }
                }
            }
        }
        s
    }

    /// Raises the last slot of an all-covariant rank-4 tensor with `g_inv`.
    pub fn raise_last(&self, g_inv: &DMatrix<f64>) -> Self {
        assert_eq!(self.rank(), 4);
        let d = self.dim;
        let mut v = self.variance.clone();
        v[3] = Variance::Up;
        TensorValue::from_fn(&v, d, &self.point, |i| {
            (0..d).map(|m| self.at4(i[0], i[1], i[2], m) * g_inv[(m, i[3])]).sum()
        })
    }

    /// Lowers the last slot with `g`.
    pub fn lower_last(&self, g: &DMatrix<f64>) -> Self {
        assert_eq!(self.rank(), 4);
        let d = self.dim;
        let mut v = self.variance.clone();
        v[3] = Variance::Down;
        TensorValue::from_fn(&v, d, &self.point, |i| {
            (0..d).map(|m| self.at4(i[0], i[1], i[2], m) * g[(m, i[3])]).sum()
        })
    }

    /// Components with |value| above `threshold`, with their indices.
    pub fn nonzero(&self, threshold: f64) -> Vec<(Vec<usize>, f64)> {
        let rank = self.rank();
        let mut out = Vec::new();
        for (k, &v) in self.data.iter().enumerate() {
            if v.abs() > threshold {
                let mut idx = vec![0; rank];
                let mut rem = k;
                for slot in (0..rank).rev() {
                    idx[slot] = rem % self.dim;
                    rem /= self.dim;
                }
                out.push((idx, v));
            }
        }
        out
    }
}

/// Kulkarni–Nomizu style product
/// `(a ⊙ b)_{ijkl} = a_ik b_jl + a_jl b_ik − a_il b_jk − a_jk b_il`.
pub fn kulkarni_nomizu(a: &DMatrix<f64>, b: &DMatrix<f64>, point: &[f64]) -> TensorValue {
    let d = a.nrows();
    TensorValue::covariant4(d, point, |i, j, k, l| {
        a[(i, k)] * b[(j, l)] + a[(j, l)] * b[(i, k)] - a[(i, l)] * b[(j, k)] - a[(j, k)] * b[(i, l)]
    })
}

/// Residuals of the algebraic curvature identities for a (0,4) tensor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetryResiduals {
    pub antisym_first: f64,
    pub antisym_last: f64,
    pub pair_exchange: f64,
    pub bianchi: f64,
}

impl SymmetryResiduals {
    pub fn worst(&self) -> f64 {
        self.antisym_first
            .max(self.antisym_last)
            .max(self.pair_exchange)
            .max(self.bianchi)
    }
}

pub fn curvature_symmetries(t: &TensorValue) -> SymmetryResiduals {
    let d = t.dim();
    let mut r = SymmetryResiduals {
        antisym_first: 0.0,
        antisym_last: 0.0,
        pair_exchange: 0.0,
        bianchi: 0.0,
    };
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                for l in 0..d {
                    let v = t.at4(i, j, k, l);
                    r.antisym_first = r.antisym_first.max((v + t.at4(j, i, k, l)).abs());
                    r.antisym_last = r.antisym_last.max((v + t.at4(i, j, l, k)).abs());
                    r.pair_exchange = r.pair_exchange.max((v - t.at4(k, l, i, j)).abs());
                    r.bianchi = r.bianchi.max((v + t.at4(j, k, i, l) + t.at4(k, i, j, l)).abs());
                }
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indexing_round_trip() {
        let t = TensorValue::covariant4(3, &[0.0; 3], |i, j, k, l| (i * 27 + j * 9 + k * 3 + l) as f64);
        assert_eq!(t.at4(2, 1, 0, 2), (2 * 27 + 9 + 2) as f64);
        assert_eq!(t.get(&[2, 1, 0, 2]), t.at4(2, 1, 0, 2));
        let nz = t.nonzero(60.0);
        assert!(nz.iter().all(|(idx, v)| t.get(idx) == *v));
    }

    #[test]
    fn kulkarni_nomizu_of_metric_has_curvature_symmetries() {
        let g = DMatrix::from_row_slice(3, 3, &[2.0, 0.3, 0.0, 0.3, 1.0, 0.1, 0.0, 0.1, 1.5]);
        let t = kulkarni_nomizu(&g, &g, &[0.0; 3]);
        assert!(curvature_symmetries(&t).worst() < 1e-14);
    }

    #[test]
    fn raise_then_lower() {
        let g = DMatrix::from_row_slice(2, 2, &[2.0, 0.5, 0.5, 1.0]);
        let gi = g.clone().try_inverse().unwrap();
        let t = kulkarni_nomizu(&g, &DMatrix::identity(2, 2), &[0.0; 2]);
        let back = t.raise_last(&gi).lower_last(&g);
        assert!(back.max_diff(&t) < 1e-14);
    }
}
