//! Permutations of axes and the σ-permutation matrices `W^σ_[n_1,...,n_d]`.
//!
//! A [`LogicalMatrix`] is stored by its column images only: column `j` is the
//! basis vector `δ_m^{c_j}`. Permutation matrices are applied by gather or
//! scatter and never materialized densely here.

use std::fmt;

use crate::error::{Error, Result};
use crate::index::Shape;
use crate::scalar::Scalar;

/// σ ∈ S_d as the 1-based image array `(σ(1), ..., σ(d))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: impl Into<Vec<usize>>) -> Result<Self> {
        let image = image.into();
        let d = image.len();
        let mut seen = vec![false; d];
        for &v in &image {
            if v == 0 || v > d || seen[v - 1] {
                return Err(Error::NotAPermutation(format!("{image:?}"), d));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { image })
    }

    pub fn identity(d: usize) -> Self {
        Permutation {
            image: (1..=d).collect(),
        }
    }

    /// The permutation whose image lists `first` followed by `rest`.
    pub fn from_blocks(first: &[usize], rest: &[usize]) -> Result<Self> {
        Self::new([first, rest].concat())
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// σ(i) for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.image[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    /// sgn(σ), computed from the cycle decomposition: a cycle of length `L`
    /// contributes `L - 1` transpositions.
    pub fn parity(&self) -> i8 {
        let d = self.image.len();
        let mut visited = vec![false; d];
        let mut transpositions = 0usize;
        for start in 0..d {
            if visited[start] {
                continue;
            }
            let mut len = 0;
            let mut k = start;
            while !visited[k] {
                visited[k] = true;
                k = self.image[k] - 1;
                len += 1;
            }
            transpositions += len - 1;
        }
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.image.len()];
        for (k, &v) in self.image.iter().enumerate() {
            inv[v - 1] = k + 1;
        }
        Permutation { image: inv }
    }

    /// Permuted dimension list `(n_σ(1), ..., n_σ(d))`.
    pub fn permute_dims(&self, dims: &[usize]) -> Vec<usize> {
        self.image.iter().map(|&v| dims[v - 1]).collect()
    }

    /// All permutations of `1..=d` in lexicographic order of their images.
    pub fn all(d: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (1..=d).collect();
        loop {
            out.push(Permutation {
                image: current.clone(),
            });
            // next lexicographic permutation
            let Some(i) = (1..current.len()).rev().find(|&i| current[i - 1] < current[i]) else {
                break;
            };
            let j = (i..current.len())
                .rev()
                .find(|&j| current[j] > current[i - 1])
                .expect("pivot has a larger successor");
            current.swap(i - 1, j);
            current[i..].reverse();
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.image.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Composition with the orientation fixed by
/// `W^σ · W^μ = W^{perm_compose(σ, μ)}`: the result maps `i` to `μ(σ(i))`.
pub fn perm_compose(sigma: &Permutation, mu: &Permutation) -> Result<Permutation> {
    if sigma.len() != mu.len() {
        return Err(Error::LengthMismatch {
            expected: sigma.len(),
            got: mu.len(),
        });
    }
    Ok(Permutation {
        image: sigma.image.iter().map(|&s| mu.image[s - 1]).collect(),
    })
}

pub fn perm_invert(p: &Permutation) -> Permutation {
    p.inverse()
}

/// An `m × n` logical matrix `δ_m[c_1, ..., c_n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LogicalMatrix {
    rows: usize,
    cols: Vec<usize>,
}

impl LogicalMatrix {
    pub fn new(rows: usize, cols: Vec<usize>) -> Result<Self> {
        for (j, &c) in cols.iter().enumerate() {
            if c == 0 || c > rows {
                return Err(Error::IndexOutOfRange {
                    axis: j + 1,
                    value: c,
                    bound: rows,
                });
            }
        }
        Ok(LogicalMatrix { rows, cols })
    }

    pub fn identity(n: usize) -> Self {
        LogicalMatrix {
            rows: n,
            cols: (1..=n).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    /// 1-based row position of the single 1 in each column.
    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols.len()
    }

    /// True when square and every row position occurs exactly once.
    pub fn is_permutation(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let mut seen = vec![false; self.rows];
        self.cols.iter().all(|&c| !std::mem::replace(&mut seen[c - 1], true))
    }

    /// `W · x` by scatter-add: `out[r] = sum_{j : c_j = r} x[j]`.
    pub fn apply<T: Scalar>(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.cols.len() {
            return Err(Error::LengthMismatch {
                expected: self.cols.len(),
                got: x.len(),
            });
        }
        let mut out = vec![T::zero(); self.rows];
        for (&c, &v) in self.cols.iter().zip(x) {
            out[c - 1] = out[c - 1].try_add(v)?;
        }
        Ok(out)
    }

    /// Row vector times matrix, `v · W`, by gather: `out[j] = v[c_j]`.
    pub fn left_apply<T: Scalar>(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.rows {
            return Err(Error::LengthMismatch {
                expected: self.rows,
                got: v.len(),
            });
        }
        Ok(self.cols.iter().map(|&c| v[c - 1]).collect())
    }

    fn require_permutation(&self, op: &str) -> Result<()> {
        if self.is_permutation() {
            Ok(())
        } else {
            Err(Error::NotAPermutation(
                format!("{op}: columns {:?}", self.cols),
                self.rows,
            ))
        }
    }
}

impl fmt::Display for LogicalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d{}[", self.rows)?;
        for (k, c) in self.cols.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Product `W1 · W2` of logical matrices.
pub fn compose_lm(w1: &LogicalMatrix, w2: &LogicalMatrix) -> Result<LogicalMatrix> {
    if w1.ncols() != w2.rows() {
        return Err(Error::NonConformable(format!(
            "{}x{} times {}x{}",
            w1.rows(),
            w1.ncols(),
            w2.rows(),
            w2.ncols()
        )));
    }
    Ok(LogicalMatrix {
        rows: w1.rows,
        cols: w2.cols.iter().map(|&c| w1.cols[c - 1]).collect(),
    })
}

pub fn invert_lm(w: &LogicalMatrix) -> Result<LogicalMatrix> {
    w.require_permutation("invert")?;
    let mut inv = vec![0; w.rows];
    for (j, &c) in w.cols.iter().enumerate() {
        inv[c - 1] = j + 1;
    }
    Ok(LogicalMatrix {
        rows: w.rows,
        cols: inv,
    })
}

/// Transpose of a permutation matrix. Non-permutation logical matrices have
/// transposes outside the single-one-per-column form and are rejected.
pub fn transpose_lm(w: &LogicalMatrix) -> Result<LogicalMatrix> {
    w.require_permutation("transpose")?;
    let mut t = vec![0; w.rows];
    // column c of W^T has its 1 in row j where W[c, j] = 1
    for (j, &c) in w.cols.iter().enumerate() {
        t[c - 1] = j + 1;
    }
    Ok(LogicalMatrix {
        rows: w.rows,
        cols: t,
    })
}

/// Axes with dimension 1, which the constructive definition excludes. The
/// construction still works for them.
pub fn degenerate_axes(dims: &Shape) -> Vec<usize> {
    dims.dims()
        .iter()
        .enumerate()
        .filter(|(_, &n)| n == 1)
        .map(|(k, _)| k + 1)
        .collect()
}

/// The σ-permutation matrix `W^σ_[n_1,...,n_d]`.
///
/// Column `c` corresponds to the basis tuple `(m_1, ..., m_d)` obtained by
/// delinearizing `c` over `(n_1, ..., n_d)`. Setting `j_k = m_σ(k)`, the column
/// holds the Kronecker chain `δ^{j_1}_{n_σ(1)} ⊗ ... ⊗ δ^{j_d}_{n_σ(d)}`, so
/// its 1 sits at the rank of `(j_1, ..., j_d)` over `(n_σ(1), ..., n_σ(d))`.
/// Hence `⋉ x_σ(i) = W^σ ⋉ x_i`.
pub fn build_perm_matrix(dims: &Shape, sigma: &Permutation) -> Result<LogicalMatrix> {
    if sigma.len() != dims.order() {
        return Err(Error::LengthMismatch {
            expected: dims.order(),
            got: sigma.len(),
        });
    }
    let permuted = Shape::new(sigma.permute_dims(dims.dims()))?;
    let d = dims.order();
    let mut m = vec![0; d];
    let mut j = vec![0; d];
    let mut cols = Vec::with_capacity(dims.size());
    for offset in 0..dims.size() {
        dims.fill_index(offset, &mut m);
        for k in 0..d {
            j[k] = m[sigma.image[k] - 1];
        }
        cols.push(permuted.offset_unchecked(&j) + 1);
    }
    Ok(LogicalMatrix {
        rows: dims.size(),
        cols,
    })
}

/// Checks `⋉ x_σ(i) = W ⋉ x_i` for every tuple of standard basis vectors
/// `x_i = δ_{n_i}^{m_i}`, forming both Kronecker chains explicitly.
pub fn satisfies_defining_property(
    dims: &Shape,
    sigma: &Permutation,
    w: &LogicalMatrix,
) -> Result<bool> {
    if sigma.len() != dims.order() || w.ncols() != dims.size() || w.rows() != dims.size() {
        return Ok(false);
    }
    let basis = |n: usize, i: usize| {
        let mut v = vec![0_i64; n];
        v[i - 1] = 1;
        v
    };
    for m in dims.indices() {
        let factors: Vec<Vec<i64>> = m
            .iter()
            .zip(dims.dims())
            .map(|(&i, &n)| basis(n, i))
            .collect();
        let plain: Vec<&[i64]> = factors.iter().map(Vec::as_slice).collect();
        let permuted: Vec<&[i64]> = sigma
            .image()
            .iter()
            .map(|&s| factors[s - 1].as_slice())
            .collect();
        let lhs = crate::stp::kron_chain(&permuted)?;
        let rhs = w.apply(&crate::stp::kron_chain(&plain)?)?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}
