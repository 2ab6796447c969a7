//! Seeded sampling helpers.
//!
//! All randomness in this crate flows through ChaCha8 seeded via
//! `seed_from_u64`, so identical seeds reproduce bit-identical draws on any
//! platform. Matrices are sampled row-major, in entry order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::DenseMatrix;

pub(crate) fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Row-major uniform sample from `[lo, hi)`. Caller validates `lo < hi`.
pub(crate) fn uniform_matrix(
    rng: &mut ChaCha8Rng,
    rows: usize,
    cols: usize,
    (lo, hi): (f64, f64),
) -> DenseMatrix {
    DenseMatrix::from_fn(rows, cols, |_, _| rng.random_range(lo..hi))
}

pub(crate) fn uniform_vec(rng: &mut ChaCha8Rng, len: usize, (lo, hi): (f64, f64)) -> Vec<f64> {
    (0..len).map(|_| rng.random_range(lo..hi)).collect()
}
