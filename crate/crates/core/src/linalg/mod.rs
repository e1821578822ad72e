//! Exact linear algebra over the integers and the rationals.
//!
//! Dense matrices are plain `Vec<Vec<BigInt>>` in row-major order and every
//! routine uses the row convention: a lattice is the row span of a matrix and
//! systems are solved as `x * A = b`.

mod hnf;
mod rational;
mod smith;
mod sparse;

pub use hnf::{hnf, hnf_with_transform, left_kernel, solve_left, Hnf};
pub use rational::{rational_left_nullspace, rational_rank};
pub use smith::{diagonal_invariant_factors, smith_normal_form, Smith};
pub use sparse::SparseIntMatrix;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
    vec![vec![BigInt::zero(); cols]; rows]
}

pub fn identity(n: usize) -> IntMatrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    m
}

pub fn from_i64(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn transpose(a: &[Vec<BigInt>], ncols: usize) -> IntMatrix {
    let mut t = zeros(ncols, a.len());
    for (i, row) in a.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            t[j][i] = x.clone();
        }
    }
    t
}

/// `a * b` where `b` has `ncols` columns.
pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>], ncols: usize) -> IntMatrix {
    a.iter().map(|row| vec_mat(row, b, ncols)).collect()
}

/// Row vector times matrix.
pub fn vec_mat(x: &[BigInt], b: &[Vec<BigInt>], ncols: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); ncols];
    for (xi, row) in x.iter().zip(b) {
        if xi.is_zero() {
            continue;
        }
        for (o, bij) in out.iter_mut().zip(row) {
            if !bij.is_zero() {
                *o += xi * bij;
            }
        }
    }
    out
}

pub fn is_zero_row(row: &[BigInt]) -> bool {
    row.iter().all(Zero::is_zero)
}

/// Rank over Q.
pub fn rank(a: &[Vec<BigInt>], ncols: usize) -> usize {
    hnf(a, ncols).rank
}
