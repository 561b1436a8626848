#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hyperstp::{Hypermatrix, IndexTuple, Matrix, Permutation, Shape};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn shape(dims: &[usize]) -> Shape {
    Shape::new(dims.to_vec()).unwrap()
}

pub fn perm(image: &[usize]) -> Permutation {
    Permutation::new(image.to_vec()).unwrap()
}

pub fn tuple(axes: &[usize]) -> IndexTuple {
    IndexTuple::new(axes.to_vec()).unwrap()
}

pub fn rand_dims(rng: &mut impl Rng, min_order: usize, max_order: usize, max_dim: usize) -> Vec<usize> {
    let d = rng.gen_range(min_order..=max_order);
    (0..d).map(|_| rng.gen_range(1..=max_dim)).collect()
}

pub fn rand_ints(rng: &mut impl Rng, len: usize) -> Vec<i64> {
    (0..len).map(|_| rng.gen_range(-9..=9)).collect()
}

pub fn rand_reals(rng: &mut impl Rng, len: usize) -> Vec<f64> {
    (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

pub fn rand_hm(rng: &mut impl Rng, dims: &[usize]) -> Hypermatrix<i64> {
    let s = shape(dims);
    let data = rand_ints(rng, s.size());
    Hypermatrix::from_flat(s, data).unwrap()
}

pub fn rand_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> Matrix<i64> {
    Matrix::new(rows, cols, rand_ints(rng, rows * cols)).unwrap()
}

pub fn rand_perm(rng: &mut impl Rng, d: usize) -> Permutation {
    let mut image: Vec<usize> = (1..=d).collect();
    image.shuffle(rng);
    Permutation::new(image).unwrap()
}

/// A random subset of `1..=d` in increasing order.
pub fn rand_subset(rng: &mut impl Rng, d: usize) -> IndexTuple {
    let axes: Vec<usize> = (1..=d).filter(|_| rng.gen_bool(0.5)).collect();
    IndexTuple::new(axes).unwrap()
}

/// Every subset of `1..=d` in increasing order.
pub fn all_subsets(d: usize) -> Vec<IndexTuple> {
    (0u32..1 << d)
        .map(|mask| {
            let axes: Vec<usize> = (1..=d).filter(|&k| mask & (1 << (k - 1)) != 0).collect();
            IndexTuple::new(axes).unwrap()
        })
        .collect()
}

/// Column vector `δ_n^i`.
pub fn basis(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i - 1] = 1;
    v
}

pub fn add_matrices(a: &Matrix<i64>, b: &Matrix<i64>) -> Matrix<i64> {
    a.try_add(b).unwrap()
}

pub fn add_vectors(x: &[i64], y: &[i64]) -> Vec<i64> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}
