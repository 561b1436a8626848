//! Shapes, multi-indices and the natural ID order.
//!
//! All public positions are 1-based. The first axis is the most significant
//! and the last axis varies fastest, so the flat rank of `(i_1, ..., i_d)` is
//! `1 + sum_k (i_k - 1) * prod_{l > k} n_l`.

use std::fmt;

use crate::error::{Error, Result};

/// Dimensions `(n_1, ..., n_d)` of a hypermatrix. Order 0 is a scalar.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Shape {
    dims: Vec<usize>,
    size: usize,
}

impl Shape {
    pub fn new(dims: impl Into<Vec<usize>>) -> Result<Self> {
        let dims = dims.into();
        let mut size: usize = 1;
        for (axis, &n) in dims.iter().enumerate() {
            if n == 0 {
                return Err(Error::ZeroDimension { axis: axis + 1 });
            }
            size = size
                .checked_mul(n)
                .ok_or_else(|| Error::SizeOverflow { dims: dims.clone() })?;
        }
        Ok(Shape { dims, size })
    }

    pub fn scalar() -> Self {
        Shape {
            dims: Vec::new(),
            size: 1,
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Dimension of a 1-based axis.
    pub fn dim(&self, axis: usize) -> usize {
        self.dims[axis - 1]
    }

    pub fn order(&self) -> usize {
        self.dims.len()
    }

    /// Total number of entries, `prod n_i` (1 for a scalar).
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_hypercubic(&self) -> bool {
        self.dims.windows(2).all(|w| w[0] == w[1])
    }

    /// Checks a multi-index against this shape.
    pub fn check(&self, idx: &[usize]) -> Result<()> {
        if idx.len() != self.dims.len() {
            return Err(Error::OrderMismatch {
                expected: self.dims.len(),
                got: idx.len(),
            });
        }
        for (axis, (&i, &n)) in idx.iter().zip(&self.dims).enumerate() {
            if i == 0 || i > n {
                return Err(Error::IndexOutOfRange {
                    axis: axis + 1,
                    value: i,
                    bound: n,
                });
            }
        }
        Ok(())
    }

    /// 1-based flat rank of a multi-index in ID order.
    pub fn linearize(&self, idx: &[usize]) -> Result<usize> {
        self.check(idx)?;
        Ok(self.offset_unchecked(idx) + 1)
    }

    /// Inverse of [`Shape::linearize`].
    pub fn delinearize(&self, rank: usize) -> Result<MultiIndex> {
        if rank == 0 || rank > self.size {
            return Err(Error::RankOutOfRange {
                rank,
                size: self.size,
            });
        }
        let mut out = vec![0; self.dims.len()];
        self.fill_index(rank - 1, &mut out);
        Ok(MultiIndex(out))
    }

    /// 0-based offset of a 1-based index known to be valid.
    pub(crate) fn offset_unchecked(&self, idx: &[usize]) -> usize {
        idx.iter()
            .zip(&self.dims)
            .fold(0, |acc, (&i, &n)| acc * n + (i - 1))
    }

    /// Writes the 1-based index of a 0-based offset into `out`.
    pub(crate) fn fill_index(&self, mut offset: usize, out: &mut [usize]) {
        for k in (0..self.dims.len()).rev() {
            let n = self.dims[k];
            out[k] = offset % n + 1;
            offset /= n;
        }
    }

    /// All multi-indices in ID order.
    pub fn indices(&self) -> IdIter {
        IdIter::new(self.dims.clone())
    }

    /// Sub-shape over the given 1-based axes, in the listed order.
    pub fn select(&self, axes: &[usize]) -> Shape {
        let dims: Vec<usize> = axes.iter().map(|&a| self.dims[a - 1]).collect();
        let size = dims.iter().product();
        Shape { dims, size }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, n) in self.dims.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, ")")
    }
}

/// A 1-based position `(i_1, ..., i_d)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub Vec<usize>);

impl MultiIndex {
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for MultiIndex {
    fn from(v: Vec<usize>) -> Self {
        MultiIndex(v)
    }
}

impl std::ops::Deref for MultiIndex {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

/// Odometer over all multi-indices of a shape, last axis fastest.
#[derive(Debug, Clone)]
pub struct IdIter {
    dims: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl IdIter {
    fn new(dims: Vec<usize>) -> Self {
        let next = if dims.iter().any(|&n| n == 0) {
            None
        } else {
            Some(vec![1; dims.len()])
        };
        IdIter { dims, next }
    }
}

impl Iterator for IdIter {
    type Item = MultiIndex;

    fn next(&mut self) -> Option<MultiIndex> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut k = succ.len();
        loop {
            if k == 0 {
                // wrapped past the last index
                break;
            }
            k -= 1;
            if succ[k] < self.dims[k] {
                succ[k] += 1;
                self.next = Some(succ);
                break;
            }
            succ[k] = 1;
        }
        Some(MultiIndex(current))
    }
}
