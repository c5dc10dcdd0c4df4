//! Small dense linear algebra on top of `nalgebra`, plus a Gauss–Jordan
//! inverse generic over [`Scalar`] so metric inverses can carry jets.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Condition numbers above this are logged.
pub const CONDITION_WARNING: f64 = 1e8;

/// Smallest eigenvalue accepted for a positive-definite metric.
pub const POSITIVITY_FLOOR: f64 = 1e-10;

pub fn condition_number(m: &DMatrix<f64>) -> f64 {
    let sv = m.singular_values();
    let max = sv.max();
    let min = sv.min();
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// LU inverse with partial pivoting.
pub fn invert(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let cond = condition_number(m);
    if cond > CONDITION_WARNING {
        log::warn!("ill-conditioned matrix (condition number {cond:e})");
    }
    m.clone().lu().try_inverse().ok_or(Error::SingularMetric)
}

pub fn check_positive_definite(g: &DMatrix<f64>) -> Result<()> {
    let sym = (g + g.transpose()) * 0.5;
    let min = sym.symmetric_eigenvalues().min();
    if min > POSITIVITY_FLOOR && g.clone().cholesky().is_some() {
        Ok(())
    } else {
        Err(Error::NotPositiveDefinite { min_eigenvalue: min })
    }
}

/// Inverse of a row-major `n × n` matrix over any scalar algebra.
///
/// Pivots on the value slot. Used with jets to obtain exact first and second
/// derivatives of the inverse metric.
pub fn invert_generic<S: Scalar>(m: &[S], n: usize) -> Result<Vec<S>> {
    assert_eq!(m.len(), n * n);
    let mut a: Vec<S> = m.to_vec();
    let zero = a[0].lift(0.0);
    let one = a[0].lift(1.0);
    let mut inv: Vec<S> = (0..n * n)
        .map(|k| if k / n == k % n { one.clone() } else { zero.clone() })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i * n + col].value().abs().total_cmp(&a[j * n + col].value().abs()))
            .unwrap();
        if a[pivot * n + col].value() == 0.0 {
            return Err(Error::SingularMetric);
        }
        if pivot != col {
            for k in 0..n {
                a.swap(pivot * n + k, col * n + k);
                inv.swap(pivot * n + k, col * n + k);
            }
        }
        let p = a[col * n + col].clone();
        for k in 0..n {
            a[col * n + k] = a[col * n + k].clone() / p.clone();
            inv[col * n + k] = inv[col * n + k].clone() / p.clone();
        }
        for row in 0..n {
            if row == col {
                continue;
            }
            let factor = a[row * n + col].clone();
            for k in 0..n {
                a[row * n + k] = a[row * n + k].clone() - factor.clone() * a[col * n + k].clone();
                inv[row * n + k] = inv[row * n + k].clone() - factor.clone() * inv[col * n + k].clone();
            }
        }
    }
    Ok(inv)
}

/// Orthonormal basis (columns) of the nullspace of `a`, treating singular
/// values below `rel_tol · σ_max` as zero.
pub fn nullspace(a: &DMatrix<f64>, rel_tol: f64) -> DMatrix<f64> {
    let n = a.ncols();
    let rows = a.nrows().max(n);
    let mut padded = DMatrix::zeros(rows, n);
    padded.view_mut((0, 0), (a.nrows(), n)).copy_from(a);
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("v_t requested");
    let sigma_max = svd.singular_values.max();
    let cutoff = if sigma_max > 0.0 { rel_tol * sigma_max } else { 0.0 };
    let cols: Vec<DVector<f64>> = (0..n)
        .filter(|&i| svd.singular_values[i] <= cutoff)
        .map(|i| v_t.row(i).transpose())
        .collect();
    if cols.is_empty() {
        DMatrix::zeros(n, 0)
    } else {
        DMatrix::from_columns(&cols)
    }
}

/// Projector onto the column span of `basis`, orthogonal with respect to `g`.
pub fn g_orthogonal_projector(basis: &DMatrix<f64>, g: &DMatrix<f64>) -> DMatrix<f64> {
    let n = g.nrows();
    if basis.ncols() == 0 {
        return DMatrix::zeros(n, n);
    }
    let gram = basis.transpose() * g * basis;
    let gram_inv = gram.clone().lu().try_inverse().expect("basis columns independent");
    basis * gram_inv * basis.transpose() * g
}

pub fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0f64, |acc, v| acc.max(v.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::Jet2;

    #[test]
    fn generic_inverse_matches_lu() {
        let m = DMatrix::from_row_slice(3, 3, &[4.0, 1.0, 0.5, 1.0, 3.0, 0.2, 0.5, 0.2, 2.0]);
        let inv = invert(&m).unwrap();
        let flat: Vec<f64> = (0..9).map(|k| m[(k / 3, k % 3)]).collect();
        let g = invert_generic(&flat, 3).unwrap();
        for k in 0..9 {
            assert!((g[k] - inv[(k / 3, k % 3)]).abs() < 1e-14);
        }
    }

    #[test]
    fn jet_inverse_derivative() {
        // d/dx of [[x, 1], [1, 2]]^{-1} = −A⁻¹ (dA) A⁻¹
        let x = Jet2::seed(0, 3.0, 1).unwrap();
        let c = |v| Jet2::constant(v, 1);
        let inv = invert_generic(&[x, c(1.0), c(1.0), c(2.0)], 2).unwrap();
        let a = DMatrix::from_row_slice(2, 2, &[3.0, 1.0, 1.0, 2.0]);
        let ai = invert(&a).unwrap();
        let da = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0]);
        let expect = -(&ai * da * &ai);
        for k in 0..4 {
            assert!((inv[k].d(0) - expect[(k / 2, k % 2)]).abs() < 1e-14);
        }
    }

    #[test]
    fn singular_detected() {
        let m = [1.0, 2.0, 2.0, 4.0];
        assert!(matches!(invert_generic(&m, 2), Err(Error::SingularMetric)));
        let m = DMatrix::from_row_slice(2, 2, &m);
        assert!(invert(&m).is_err());
    }

    #[test]
    fn nullspace_dimension() {
        let a = DMatrix::from_row_slice(1, 3, &[1.0, 1.0, 0.0]);
        let ns = nullspace(&a, 1e-8);
        assert_eq!(ns.ncols(), 2);
        assert!(max_abs(&(&a * &ns)) < 1e-12);
    }

    #[test]
    fn projector_is_idempotent_and_g_selfadjoint() {
        let g = DMatrix::from_row_slice(3, 3, &[2.0, 0.3, 0.0, 0.3, 1.0, 0.1, 0.0, 0.1, 1.5]);
        let b = DMatrix::from_row_slice(3, 2, &[1.0, 0.0, 1.0, 1.0, 0.0, 2.0]);
        let p = g_orthogonal_projector(&b, &g);
        assert!(max_abs(&(&p * &p - &p)) < 1e-12);
        let gp = &g * &p;
        assert!(max_abs(&(&gp - gp.transpose())) < 1e-12);
    }

    #[test]
    fn positive_definiteness() {
        let g = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        assert!(check_positive_definite(&g).is_err());
        assert!(check_positive_definite(&DMatrix::identity(3, 3)).is_ok());
    }
}
