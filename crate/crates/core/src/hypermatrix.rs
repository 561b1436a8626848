use crate::error::{Error, Result};
use crate::index::{MultiIndex, Shape};
use crate::scalar::Scalar;

/// An order-`d` hypermatrix stored flat in natural ID order.
#[derive(Debug, Clone, PartialEq)]
pub struct Hypermatrix<T> {
    shape: Shape,
    data: Vec<T>,
}

impl<T: Scalar> Hypermatrix<T> {
    pub fn from_flat(shape: Shape, data: Vec<T>) -> Result<Self> {
        if data.len() != shape.size() {
            return Err(Error::LengthMismatch {
                expected: shape.size(),
                got: data.len(),
            });
        }
        Ok(Hypermatrix { shape, data })
    }

    /// Convenience constructor from a dimension list.
    pub fn new(dims: &[usize], data: Vec<T>) -> Result<Self> {
        Self::from_flat(Shape::new(dims.to_vec())?, data)
    }

    pub fn zeros(shape: Shape) -> Self {
        let data = vec![T::zero(); shape.size()];
        Hypermatrix { shape, data }
    }

    pub fn scalar(value: T) -> Self {
        Hypermatrix {
            shape: Shape::scalar(),
            data: vec![value],
        }
    }

    /// Builds a hypermatrix by evaluating `f` at every index in ID order.
    pub fn from_fn(shape: Shape, mut f: impl FnMut(&[usize]) -> T) -> Self {
        let data = shape.indices().map(|idx| f(&idx)).collect();
        Hypermatrix { shape, data }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn dims(&self) -> &[usize] {
        self.shape.dims()
    }

    pub fn order(&self) -> usize {
        self.shape.order()
    }

    /// Flat data in ID order.
    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<T> {
        self.data
    }

    pub fn get(&self, idx: &[usize]) -> Result<T> {
        self.shape.check(idx)?;
        Ok(self.data[self.shape.offset_unchecked(idx)])
    }

    /// Entry at a 1-based flat rank.
    pub fn get_rank(&self, rank: usize) -> Result<T> {
        if rank == 0 || rank > self.data.len() {
            return Err(Error::RankOutOfRange {
                rank,
                size: self.data.len(),
            });
        }
        Ok(self.data[rank - 1])
    }

    /// `(index, value)` pairs in ID order.
    pub fn iter(&self) -> impl Iterator<Item = (MultiIndex, T)> + '_ {
        self.shape.indices().zip(self.data.iter().copied())
    }

    /// The value of an order-0 hypermatrix.
    pub fn as_scalar(&self) -> Option<T> {
        (self.order() == 0).then(|| self.data[0])
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(T) -> U) -> Hypermatrix<U> {
        Hypermatrix {
            shape: self.shape.clone(),
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn try_scale(&self, c: T) -> Result<Self> {
        let data = self
            .data
            .iter()
            .map(|&x| x.try_mul(c))
            .collect::<Result<_>>()?;
        Ok(Hypermatrix {
            shape: self.shape.clone(),
            data,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.try_sub(b))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.try_add(b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(T, T) -> Result<T>) -> Result<Self> {
        self.require_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f(a, b))
            .collect::<Result<_>>()?;
        Ok(Hypermatrix {
            shape: self.shape.clone(),
            data,
        })
    }

    fn require_same_shape(&self, other: &Self) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch {
                left: self.dims().to_vec(),
                right: other.dims().to_vec(),
            });
        }
        Ok(())
    }

    /// Element-wise comparison: exact on the integer backend, relative
    /// tolerance on the float backend.
    pub fn approx_equal(&self, other: &Self, tol: f64) -> Result<bool> {
        self.require_same_shape(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .all(|(&a, &b)| a.approx_eq(b, tol)))
    }

    /// Largest absolute entry, as `f64`.
    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .map(|x| x.to_f64().abs())
            .fold(0.0, f64::max)
    }
}
