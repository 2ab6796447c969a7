//! Singular value decomposition and the Moore-Penrose pseudoinverse.
//!
//! The factorization kernel is delegated to `nalgebra`; this module owns the
//! contract: sorted singular values, explicit non-convergence errors, and the
//! rank-cutoff pseudoinverse built on top.

use crate::matrix::{DenseMatrix, LinalgError};

/// Thin SVD `A = U * diag(sigma) * Vt` with `k = min(rows, cols)`.
///
/// `u` is rows x k with orthonormal columns, `vt` is k x cols with
/// orthonormal rows, and `singular_values` is nonincreasing and nonnegative.
#[derive(Debug, Clone)]
pub struct SvdFactorization {
    pub u: DenseMatrix,
    pub singular_values: Vec<f64>,
    pub vt: DenseMatrix,
}

/// Default relative rank cutoff: machine epsilon times the larger dimension.
pub fn default_pinv_rel_tol(rows: usize, cols: usize) -> f64 {
    f64::EPSILON * rows.max(cols) as f64
}

/// Thin SVD of `a`. Fails with [`LinalgError::SvdNonConvergence`] if the
/// iteration does not converge within a generous bound.
pub fn svd(a: &DenseMatrix) -> Result<SvdFactorization, LinalgError> {
    let (rows, cols) = (a.rows(), a.cols());
    let na = nalgebra::DMatrix::from_row_slice(rows, cols, a.as_slice());
    let max_iter = 100 * rows.min(cols) + 5_000;
    let f = nalgebra::linalg::SVD::try_new(na, true, true, f64::EPSILON, max_iter)
        .ok_or(LinalgError::SvdNonConvergence)?;
    let nu = f.u.expect("u requested");
    let nvt = f.v_t.expect("v_t requested");
    let k = f.singular_values.len();

    // Order descending regardless of what the backend produced.
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&i, &j| f.singular_values[j].total_cmp(&f.singular_values[i]));

    let singular_values: Vec<f64> = order.iter().map(|&i| f.singular_values[i]).collect();
    let u = DenseMatrix::from_fn(rows, k, |i, j| nu[(i, order[j])]);
    let vt = DenseMatrix::from_fn(k, cols, |i, j| nvt[(order[i], j)]);
    Ok(SvdFactorization {
        u,
        singular_values,
        vt,
    })
}

impl SvdFactorization {
    /// Largest singular value (zero for the all-zero matrix).
    pub fn sigma_max(&self) -> f64 {
        self.singular_values.first().copied().unwrap_or(0.0)
    }

    /// Smallest singular value of the thin factorization.
    pub fn sigma_min(&self) -> f64 {
        self.singular_values.last().copied().unwrap_or(0.0)
    }

    /// Number of singular values above `rel_tol * sigma_max`.
    pub fn rank(&self, rel_tol: f64) -> usize {
        let cutoff = rel_tol * self.sigma_max();
        self.singular_values.iter().filter(|&&s| s > cutoff).count()
    }

    /// Pseudoinverse with singular values at or below `rel_tol * sigma_max`
    /// treated as zero.
    pub fn pseudo_inverse(&self, rel_tol: f64) -> Result<DenseMatrix, LinalgError> {
        if !rel_tol.is_finite() || rel_tol < 0.0 {
            return Err(LinalgError::InvalidTolerance { value: rel_tol });
        }
        let rows = self.u.rows();
        let cols = self.vt.cols();
        let k = self.singular_values.len();
        let cutoff = rel_tol * self.sigma_max();

        // out = V * diag(1/sigma_kept) * Ut, computed with contiguous row
        // access on both factors.
        let v = self.vt.transpose(); // cols x k
        let ut = self.u.transpose(); // k x rows
        let inv_sigma: Vec<f64> = self
            .singular_values
            .iter()
            .map(|&s| if s > cutoff { 1.0 / s } else { 0.0 })
            .collect();

        let mut out = vec![0.0; cols * rows];
        for i in 0..cols {
            let v_row = v.row(i);
            let out_row = &mut out[i * rows..(i + 1) * rows];
            for j in 0..k {
                let c = v_row[j] * inv_sigma[j];
                if c != 0.0 {
                    let ut_row = ut.row(j);
                    for (o, &u_val) in out_row.iter_mut().zip(ut_row) {
                        *o += c * u_val;
                    }
                }
            }
        }
        DenseMatrix::new(cols, rows, out)
    }
}

/// Moore-Penrose pseudoinverse with the default rank cutoff.
pub fn pinv(a: &DenseMatrix) -> Result<DenseMatrix, LinalgError> {
    pinv_with_tol(a, default_pinv_rel_tol(a.rows(), a.cols()))
}

/// Moore-Penrose pseudoinverse with an explicit relative rank cutoff.
pub fn pinv_with_tol(a: &DenseMatrix, rel_tol: f64) -> Result<DenseMatrix, LinalgError> {
    if !rel_tol.is_finite() || rel_tol < 0.0 {
        return Err(LinalgError::InvalidTolerance { value: rel_tol });
    }
    svd(a)?.pseudo_inverse(rel_tol)
}

/// Smallest and largest singular values of `a`.
pub fn min_max_singular(a: &DenseMatrix) -> Result<(f64, f64), LinalgError> {
    let f = svd(a)?;
    Ok((f.sigma_min(), f.sigma_max()))
}

/// Spectral condition number `sigma_max / sigma_min`, `f64::INFINITY` when
/// `sigma_min` is zero.
pub fn condition_number(a: &DenseMatrix) -> Result<f64, LinalgError> {
    let (lo, hi) = min_max_singular(a)?;
    if lo == 0.0 {
        Ok(f64::INFINITY)
    } else {
        Ok(hi / lo)
    }
}

/// `sigma_min / sigma_max`, with the all-zero matrix mapping to 0 (singular).
pub fn singularity_ratio(a: &DenseMatrix) -> Result<f64, LinalgError> {
    let (lo, hi) = min_max_singular(a)?;
    if hi == 0.0 {
        Ok(0.0)
    } else {
        Ok(lo / hi)
    }
}
