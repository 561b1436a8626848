//! Scalar backends.
//!
//! Two backends are supported: exact `i64` with checked arithmetic, and
//! binary64 `f64`. Every ring operation returns a `Result` so the integer
//! backend can report overflow instead of wrapping.

use std::fmt::{Debug, Display};

use crate::error::{Error, Result};

/// Tag for the two scalar backends, also used in the document format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarKind {
    Int,
    Float,
}

impl ScalarKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ScalarKind::Int => "int",
            ScalarKind::Float => "float",
        }
    }
}

pub trait Scalar: Copy + PartialEq + Debug + Display + Send + Sync + 'static {
    const KIND: ScalarKind;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;

    fn try_add(self, rhs: Self) -> Result<Self>;
    fn try_sub(self, rhs: Self) -> Result<Self>;
    fn try_mul(self, rhs: Self) -> Result<Self>;
    fn try_neg(self) -> Result<Self>;

    /// Division by a positive count. The integer backend requires the
    /// quotient to be exact.
    fn try_div_count(self, count: usize) -> Result<Self>;

    /// Square root. Only meaningful on the float backend.
    fn try_sqrt(self) -> Result<Self>;

    fn to_f64(self) -> f64;

    /// Element comparison used by `approx_equal`: exact for integers,
    /// `|a - b| <= tol * max(1, |a|, |b|)` for floats.
    fn approx_eq(self, other: Self, tol: f64) -> bool;

    fn is_zero(self) -> bool {
        self == Self::zero()
    }
}

impl Scalar for i64 {
    const KIND: ScalarKind = ScalarKind::Int;

    fn zero() -> Self {
        0
    }

    fn one() -> Self {
        1
    }

    fn from_i64(v: i64) -> Self {
        v
    }

    fn try_add(self, rhs: Self) -> Result<Self> {
        self.checked_add(rhs).ok_or(Error::Overflow { op: "add" })
    }

    fn try_sub(self, rhs: Self) -> Result<Self> {
        self.checked_sub(rhs).ok_or(Error::Overflow { op: "sub" })
    }

    fn try_mul(self, rhs: Self) -> Result<Self> {
        self.checked_mul(rhs).ok_or(Error::Overflow { op: "mul" })
    }

    fn try_neg(self) -> Result<Self> {
        self.checked_neg().ok_or(Error::Overflow { op: "neg" })
    }

    fn try_div_count(self, count: usize) -> Result<Self> {
        let c = i64::try_from(count).map_err(|_| Error::Overflow { op: "div" })?;
        if c == 0 {
            return Err(Error::NotDivisible(0, 0));
        }
        if self % c != 0 {
            return Err(Error::Unsupported {
                backend: "int",
                op: "inexact division",
            });
        }
        Ok(self / c)
    }

    fn try_sqrt(self) -> Result<Self> {
        Err(Error::Unsupported {
            backend: "int",
            op: "square root",
        })
    }

    fn to_f64(self) -> f64 {
        self as f64
    }

    fn approx_eq(self, other: Self, _tol: f64) -> bool {
        self == other
    }
}

impl Scalar for f64 {
    const KIND: ScalarKind = ScalarKind::Float;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn try_add(self, rhs: Self) -> Result<Self> {
        Ok(self + rhs)
    }

    fn try_sub(self, rhs: Self) -> Result<Self> {
        Ok(self - rhs)
    }

    fn try_mul(self, rhs: Self) -> Result<Self> {
        Ok(self * rhs)
    }

    fn try_neg(self) -> Result<Self> {
        Ok(-self)
    }

    fn try_div_count(self, count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::NotDivisible(0, 0));
        }
        Ok(self / count as f64)
    }

    fn try_sqrt(self) -> Result<Self> {
        Ok(self.sqrt())
    }

    fn to_f64(self) -> f64 {
        self
    }

    fn approx_eq(self, other: Self, tol: f64) -> bool {
        let scale = 1.0_f64.max(self.abs()).max(other.abs());
        (self - other).abs() <= tol * scale
    }
}

/// Fixed-order sum of products, `sum_k a_k * b_k`, accumulated left to right.
pub(crate) fn dot<T: Scalar>(pairs: impl IntoIterator<Item = (T, T)>) -> Result<T> {
    let mut acc = T::zero();
    for (a, b) in pairs {
        acc = acc.try_add(a.try_mul(b)?)?;
    }
    Ok(acc)
}
