//! Kronecker products and the semi-tensor product family.
//!
//! Vectors are column vectors (`&[T]`) unless stated otherwise. The M-M
//! product is computed without materializing `A ⊗ I` or `B ⊗ I`; the
//! result is identical to `(A ⊗ I_{t/n})(B ⊗ I_{t/p})`.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: usize, b: usize) -> Result<usize> {
    if a == 0 || b == 0 {
        return Err(Error::NonConformable(format!(
            "lcm of zero dimension ({a}, {b})"
        )));
    }
    (a / gcd(a, b))
        .checked_mul(b)
        .ok_or(Error::Overflow { op: "lcm" })
}

/// Inner dimensions `n` (left) and `p` (right) with `t = lcm(n, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimPair {
    pub t: usize,
    pub left_factor: usize,
    pub right_factor: usize,
}

impl DimPair {
    pub fn new(n: usize, p: usize) -> Result<Self> {
        let t = lcm(n, p)?;
        Ok(DimPair {
            t,
            left_factor: t / n,
            right_factor: t / p,
        })
    }
}

fn checked_dim(a: usize, b: usize) -> Result<usize> {
    a.checked_mul(b).ok_or(Error::Overflow { op: "dimension" })
}

/// Kronecker product `A ⊗ B`.
pub fn kron<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    let rows = checked_dim(a.rows(), b.rows())?;
    let cols = checked_dim(a.cols(), b.cols())?;
    checked_dim(rows, cols)?;
    let mut data = Vec::with_capacity(rows * cols);
    for i in 0..a.rows() {
        for k in 0..b.rows() {
            for j in 0..a.cols() {
                let aij = a.at(i, j);
                for l in 0..b.cols() {
                    data.push(aij.try_mul(b.at(k, l))?);
                }
            }
        }
    }
    Matrix::new(rows, cols, data)
}

/// Kronecker chain `x_1 ⊗ ... ⊗ x_d` of column vectors. The empty chain is `(1)`.
pub fn kron_chain<T: Scalar>(xs: &[&[T]]) -> Result<Vec<T>> {
    let mut acc = vec![T::one()];
    for x in xs {
        checked_dim(acc.len(), x.len())?;
        let mut next = Vec::with_capacity(acc.len() * x.len());
        for &a in &acc {
            for &b in *x {
                next.push(a.try_mul(b)?);
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// M-M semi-tensor product `A ⋉ B = (A ⊗ I_{t/n})(B ⊗ I_{t/p})`, `t = lcm(n, p)`.
pub fn mm_stp<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    let (m, n) = a.shape();
    let (p, q) = b.shape();
    let dp = DimPair::new(n, p)?;
    if dp.left_factor == 1 && dp.right_factor == 1 {
        return a.matmul(b);
    }
    let (fa, fb) = (dp.left_factor, dp.right_factor);
    let rows = checked_dim(m, fa)?;
    let cols = checked_dim(q, fb)?;
    checked_dim(rows, cols)?;

    // Entry ((i, α), (j, β)) sums A[i, κ] B[k / fb, j] over the shared index
    // k = κ·fa + α with k mod fb = β. Accumulation runs over κ in increasing
    // order, which is the row-major order of the expanded product.
    let mut out = vec![T::zero(); rows * cols];
    for i in 0..m {
        for alpha in 0..fa {
            let r = i * fa + alpha;
            for kappa in 0..n {
                let aik = a.at(i, kappa);
                if aik.is_zero() {
                    continue;
                }
                let k = kappa * fa + alpha;
                let (row_b, beta) = (k / fb, k % fb);
                for j in 0..q {
                    let c = j * fb + beta;
                    let term = aik.try_mul(b.at(row_b, j))?;
                    out[r * cols + c] = out[r * cols + c].try_add(term)?;
                }
            }
        }
    }
    Matrix::new(rows, cols, out)
}

/// M-V semi-tensor product `A ⋉⃗ x = (A ⊗ I_{t/n})(x ⊗ 1_{t/p})`.
pub fn mv_stp<T: Scalar>(a: &Matrix<T>, x: &[T]) -> Result<Vec<T>> {
    let (m, n) = a.shape();
    let dp = DimPair::new(n, x.len())?;
    let (fa, fx) = (dp.left_factor, dp.right_factor);
    let rows = checked_dim(m, fa)?;
    let mut out = Vec::with_capacity(rows);
    for i in 0..m {
        for alpha in 0..fa {
            let mut acc = T::zero();
            for kappa in 0..n {
                let k = kappa * fa + alpha;
                acc = acc.try_add(a.at(i, kappa).try_mul(x[k / fx])?)?;
            }
            out.push(acc);
        }
    }
    Ok(out)
}

/// V-V semi-tensor product `(x ⊗ 1_{t/m})^T (y ⊗ 1_{t/n})`.
pub fn vv_stp<T: Scalar>(x: &[T], y: &[T]) -> Result<T> {
    let dp = DimPair::new(x.len(), y.len())?;
    let mut acc = T::zero();
    for k in 0..dp.t {
        acc = acc.try_add(x[k / dp.left_factor].try_mul(y[k / dp.right_factor])?)?;
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// `x ±⃗ y = (x ⊗ 1_{t/p}) ± (y ⊗ 1_{t/q})`.
pub fn vec_oplus<T: Scalar>(x: &[T], y: &[T], sign: Sign) -> Result<Vec<T>> {
    let dp = DimPair::new(x.len(), y.len())?;
    (0..dp.t)
        .map(|k| {
            let a = x[k / dp.left_factor];
            let b = y[k / dp.right_factor];
            match sign {
                Sign::Plus => a.try_add(b),
                Sign::Minus => a.try_sub(b),
            }
        })
        .collect()
}

/// `⟨x, y⟩ = (x ·⃗ y) / t`. On the integer backend the quotient must be exact.
pub fn stp_inner<T: Scalar>(x: &[T], y: &[T]) -> Result<T> {
    let t = lcm(x.len(), y.len())?;
    vv_stp(x, y)?.try_div_count(t)
}

/// `‖x‖ = sqrt(⟨x, x⟩)`; rejected by the integer backend.
pub fn stp_norm<T: Scalar>(x: &[T]) -> Result<T> {
    if T::KIND == crate::scalar::ScalarKind::Int {
        return Err(Error::Unsupported {
            backend: "int",
            op: "norm",
        });
    }
    stp_inner(x, x)?.try_sqrt()
}

/// `d(x, y) = ‖x −⃗ y‖`; rejected by the integer backend.
pub fn stp_distance<T: Scalar>(x: &[T], y: &[T]) -> Result<T> {
    stp_norm(&vec_oplus(x, y, Sign::Minus)?)
}

/// `δ_n^I = V_r(I_n)` as a column vector of length `n²`.
pub fn delta_i<T: Scalar>(n: usize) -> Vec<T> {
    let mut v = vec![T::zero(); n * n];
    for i in 0..n {
        v[i * n + i] = T::one();
    }
    v
}
