//! Dense real matrix type used throughout the crate.
//!
//! Entries are `f64` in row-major order. Construction validates shape and
//! finiteness; every operation that can fail on shapes returns a
//! [`LinalgError`] instead of panicking.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("{op}: dimension mismatch, left is {left_rows}x{left_cols}, right is {right_rows}x{right_cols}")]
    DimensionMismatch {
        op: &'static str,
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("matrix must have at least one row and one column, got {rows}x{cols}")]
    Empty { rows: usize, cols: usize },
    #[error("entry buffer of length {len} does not match {rows}x{cols}")]
    BadLength { rows: usize, cols: usize, len: usize },
    #[error("singular value decomposition did not converge")]
    SvdNonConvergence,
    #[error("invalid tolerance {value}: must be finite and >= 0")]
    InvalidTolerance { value: f64 },
}

/// Row-major dense matrix of `f64`.
///
/// Invariants: `rows >= 1`, `cols >= 1`, all entries finite. Enforced by the
/// fallible constructors; the panicking ones (`zeros`, `from_fn`) are for
/// shapes the caller already knows to be valid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix", into = "RawMatrix")]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct RawMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
}

impl TryFrom<RawMatrix> for DenseMatrix {
    type Error = LinalgError;

    fn try_from(raw: RawMatrix) -> Result<Self, LinalgError> {
        DenseMatrix::new(raw.rows, raw.cols, raw.entries)
    }
}

impl From<DenseMatrix> for RawMatrix {
    fn from(m: DenseMatrix) -> Self {
        RawMatrix {
            rows: m.rows,
            cols: m.cols,
            entries: m.entries,
        }
    }
}

impl DenseMatrix {
    /// Validating constructor from a row-major entry buffer.
    pub fn new(rows: usize, cols: usize, entries: Vec<f64>) -> Result<Self, LinalgError> {
        if rows == 0 || cols == 0 {
            return Err(LinalgError::Empty { rows, cols });
        }
        if entries.len() != rows * cols {
            return Err(LinalgError::BadLength {
                rows,
                cols,
                len: entries.len(),
            });
        }
        if let Some(pos) = entries.iter().position(|v| !v.is_finite()) {
            return Err(LinalgError::NonFinite {
                row: pos / cols,
                col: pos % cols,
            });
        }
        Ok(DenseMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from equally sized rows.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, LinalgError> {
        if rows.is_empty() {
            return Err(LinalgError::Empty { rows: 0, cols: 0 });
        }
        let cols = rows[0].len();
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(LinalgError::BadLength {
                rows: rows.len(),
                cols,
                len: bad.len(),
            });
        }
        let entries: Vec<f64> = rows.iter().flatten().copied().collect();
        Self::new(rows.len(), cols, entries)
    }

    /// All-zeros matrix. Panics on a zero dimension.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "zero-sized matrix");
        DenseMatrix {
            rows,
            cols,
            entries: vec![0.0; rows * cols],
        }
    }

    /// Identity matrix of order `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1.0;
        }
        m
    }

    /// Entry-wise construction. Panics on a zero dimension; the generator
    /// must produce finite values.
    pub fn from_fn<F: FnMut(usize, usize) -> f64>(rows: usize, cols: usize, mut f: F) -> Self {
        assert!(rows >= 1 && cols >= 1, "zero-sized matrix");
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = f(i, j);
                debug_assert!(v.is_finite(), "non-finite entry at ({i}, {j})");
                entries.push(v);
            }
        }
        DenseMatrix {
            rows,
            cols,
            entries,
        }
    }

    /// Single-column matrix from a vector.
    pub fn column(values: &[f64]) -> Result<Self, LinalgError> {
        Self::new(values.len(), 1, values.to_vec())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: f64) {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        self.entries[row * self.cols + col] = value;
    }

    pub fn row(&self, row: usize) -> &[f64] {
        assert!(row < self.rows, "row index out of bounds");
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.entries
    }

    pub fn transpose(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn matmul(&self, rhs: &DenseMatrix) -> Result<DenseMatrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "matmul",
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: rhs.rows,
                right_cols: rhs.cols,
            });
        }
        let mut out = DenseMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let lhs_row = self.row(i);
            let out_row = &mut out.entries[i * rhs.cols..(i + 1) * rhs.cols];
            for (k, &l) in lhs_row.iter().enumerate() {
                let rhs_row = &rhs.entries[k * rhs.cols..(k + 1) * rhs.cols];
                for (o, &r) in out_row.iter_mut().zip(rhs_row) {
                    *o += l * r;
                }
            }
        }
        Ok(out)
    }

    /// Entry-wise difference `self - rhs`.
    pub fn sub(&self, rhs: &DenseMatrix) -> Result<DenseMatrix, LinalgError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(LinalgError::DimensionMismatch {
                op: "sub",
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: rhs.rows,
                right_cols: rhs.cols,
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Entry-wise sum `self + rhs`.
    pub fn add(&self, rhs: &DenseMatrix) -> Result<DenseMatrix, LinalgError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(LinalgError::DimensionMismatch {
                op: "add",
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: rhs.rows,
                right_cols: rhs.cols,
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn scale(&self, factor: f64) -> DenseMatrix {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|v| v * factor).collect(),
        }
    }

    /// Frobenius norm: sqrt of the sum of squared entries.
    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    /// Mean of absolute entries.
    pub fn mean_abs(&self) -> f64 {
        self.entries.iter().map(|v| v.abs()).sum::<f64>() / self.entries.len() as f64
    }

    /// Determinant via LU with partial pivoting. Exact zero on pivot breakdown.
    pub fn determinant(&self) -> Result<f64, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut lu = self.entries.clone();
        let mut det = 1.0;
        for k in 0..n {
            let mut pivot_row = k;
            let mut pivot_abs = lu[k * n + k].abs();
            for i in (k + 1)..n {
                let v = lu[i * n + k].abs();
                if v > pivot_abs {
                    pivot_abs = v;
                    pivot_row = i;
                }
            }
            if pivot_abs == 0.0 {
                return Ok(0.0);
            }
            if pivot_row != k {
                for j in 0..n {
                    lu.swap(k * n + j, pivot_row * n + j);
                }
                det = -det;
            }
            let pivot = lu[k * n + k];
            det *= pivot;
            for i in (k + 1)..n {
                let factor = lu[i * n + k] / pivot;
                lu[i * n + k] = factor;
                for j in (k + 1)..n {
                    lu[i * n + j] -= factor * lu[k * n + j];
                }
            }
        }
        Ok(det)
    }

    /// Removes row `row` and column `col`; requires at least 2x2.
    pub fn minor_matrix(&self, row: usize, col: usize) -> Result<DenseMatrix, LinalgError> {
        if self.rows < 2 || self.cols < 2 {
            return Err(LinalgError::Empty {
                rows: self.rows.saturating_sub(1),
                cols: self.cols.saturating_sub(1),
            });
        }
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        let mut entries = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in 0..self.rows {
            if i == row {
                continue;
            }
            for j in 0..self.cols {
                if j == col {
                    continue;
                }
                entries.push(self.get(i, j));
            }
        }
        Ok(DenseMatrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            entries,
        })
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = f64;

    fn index(&self, (row, col): (usize, usize)) -> &f64 {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        &self.entries[row * self.cols + col]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn new_rejects_bad_shapes() {
        assert!(matches!(
            DenseMatrix::new(0, 3, vec![]),
            Err(LinalgError::Empty { .. })
        ));
        assert!(matches!(
            DenseMatrix::new(2, 2, vec![1.0; 3]),
            Err(LinalgError::BadLength { len: 3, .. })
        ));
        assert!(matches!(
            DenseMatrix::new(1, 2, vec![1.0, f64::NAN]),
            Err(LinalgError::NonFinite { row: 0, col: 1 })
        ));
        assert!(matches!(
            DenseMatrix::new(2, 1, vec![1.0, f64::INFINITY]),
            Err(LinalgError::NonFinite { row: 1, col: 0 })
        ));
    }

    #[test]
    fn matmul_matches_hand_product() {
        let a = DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let b = DenseMatrix::from_rows(&[vec![5.0, 6.0], vec![7.0, 8.0]]).unwrap();
        let c = a.matmul(&b).unwrap();
        assert_eq!(c.as_slice(), &[19.0, 22.0, 43.0, 50.0]);
    }

    #[test]
    fn matmul_rejects_mismatched_shapes() {
        let a = DenseMatrix::zeros(2, 3);
        let b = DenseMatrix::zeros(2, 3);
        assert!(matches!(
            a.matmul(&b),
            Err(LinalgError::DimensionMismatch { op: "matmul", .. })
        ));
    }

    #[test]
    fn frobenius_norm_three_four_five() {
        let m = DenseMatrix::from_rows(&[vec![3.0, 4.0]]).unwrap();
        assert_relative_eq!(m.frobenius_norm(), 5.0, max_relative = 1e-15);
    }

    #[test]
    fn determinant_identity_is_one() {
        assert_eq!(DenseMatrix::identity(2).determinant().unwrap(), 1.0);
    }

    #[test]
    fn determinant_matches_sarrus_rule() {
        // Oracle: 3x3 determinant expanded by the rule of Sarrus.
        let rows = [
            vec![2.0, -1.0, 3.0],
            vec![0.5, 4.0, -2.0],
            vec![1.5, 0.0, 1.0],
        ];
        let sarrus = |r: &[Vec<f64>]| {
            r[0][0] * r[1][1] * r[2][2] + r[0][1] * r[1][2] * r[2][0] + r[0][2] * r[1][0] * r[2][1]
                - r[0][2] * r[1][1] * r[2][0]
                - r[0][0] * r[1][2] * r[2][1]
                - r[0][1] * r[1][0] * r[2][2]
        };
        let m = DenseMatrix::from_rows(&rows).unwrap();
        assert_relative_eq!(
            m.determinant().unwrap(),
            sarrus(&rows),
            max_relative = 1e-13
        );
    }

    #[test]
    fn determinant_of_rank_deficient_matrix_is_zero() {
        let m = DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert_relative_eq!(m.determinant().unwrap(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn determinant_requires_square() {
        let m = DenseMatrix::zeros(2, 3);
        assert!(matches!(
            m.determinant(),
            Err(LinalgError::NotSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn minor_removes_row_and_column() {
        let m = DenseMatrix::from_rows(&[
            vec![1.0, 2.0, 3.0],
            vec![4.0, 5.0, 6.0],
            vec![7.0, 8.0, 9.0],
        ])
        .unwrap();
        let minor = m.minor_matrix(1, 0).unwrap();
        assert_eq!(minor.as_slice(), &[2.0, 3.0, 8.0, 9.0]);
    }

    #[test]
    fn serde_round_trip_preserves_entries() {
        let m = DenseMatrix::from_rows(&[vec![1.5, -2.25], vec![0.125, 3.0]]).unwrap();
        let json = serde_json::to_string(&m).unwrap();
        let back: DenseMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn serde_rejects_non_finite_payload() {
        let json = r#"{"rows":1,"cols":1,"entries":[null]}"#;
        assert!(serde_json::from_str::<DenseMatrix>(json).is_err());
    }
}
