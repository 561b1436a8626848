//! Deterministic fixtures for the kernel benchmarks.

use hyperstp::{Hypermatrix, Matrix, Permutation, Shape};

/// A small integer in `-8..=8` determined by `k` and `seed`.
fn entry(k: usize, seed: usize) -> i64 {
    let h = (k.wrapping_add(seed).wrapping_mul(2_654_435_761)) % 17;
    h as i64 - 8
}

/// A hypermatrix of the given dimensions filled with small integers.
pub fn hypermatrix(dims: &[usize], seed: usize) -> Hypermatrix<i64> {
    let shape = Shape::new(dims.to_vec()).expect("valid fixture shape");
    let data = (0..shape.size()).map(|k| entry(k, seed)).collect();
    Hypermatrix::from_flat(shape, data).expect("fixture length matches shape")
}

/// A dense integer matrix filled with small integers.
pub fn matrix(rows: usize, cols: usize, seed: usize) -> Matrix<i64> {
    Matrix::from_fn(rows, cols, |i, j| entry((i - 1) * cols + (j - 1), seed))
}

/// The cyclic shift `(2, 3, ..., d, 1)`.
pub fn cyclic(d: usize) -> Permutation {
    Permutation::new((2..=d).chain([1]).collect::<Vec<_>>()).expect("cyclic shift is a permutation")
}

/// The reversal `(d, d-1, ..., 1)`.
pub fn reversal(d: usize) -> Permutation {
    Permutation::new((1..=d).rev().collect::<Vec<_>>()).expect("reversal is a permutation")
}
