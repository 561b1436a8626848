//! Stacking forms, σ-transposes and matrix expressions `M_A^{r₁×r₂}`.
//!
//! The direct index-shuffle constructions ([`sigma_transpose`],
//! [`matrix_expression`]) are the reference. The permutation-matrix routes
//! ([`sigma_transpose_via_perm`], [`vec_to_matrix_form`],
//! [`matrix_form_to_vec`], [`convert_expression`]) must agree with them.

use std::fmt;

use crate::error::{Error, Result};
use crate::hypermatrix::Hypermatrix;
use crate::index::Shape;
use crate::matrix::Matrix;
use crate::permutation::{build_perm_matrix, compose_lm, Permutation};
use crate::scalar::Scalar;

/// An ordered, duplicate-free list of 1-based axis labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IndexTuple(Vec<usize>);

impl IndexTuple {
    pub fn new(axes: impl Into<Vec<usize>>) -> Result<Self> {
        let axes = axes.into();
        for (k, &a) in axes.iter().enumerate() {
            if a == 0 {
                return Err(Error::InvalidAxes(format!("axis labels are 1-based, got 0 in {axes:?}")));
            }
            if axes[..k].contains(&a) {
                return Err(Error::InvalidAxes(format!("duplicate axis {a} in {axes:?}")));
            }
        }
        Ok(IndexTuple(axes))
    }

    pub fn empty() -> Self {
        IndexTuple(Vec::new())
    }

    /// `(1, ..., d)`.
    pub fn full(d: usize) -> Self {
        IndexTuple((1..=d).collect())
    }

    pub fn axes(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1])
    }

    pub fn contains(&self, axis: usize) -> bool {
        self.0.contains(&axis)
    }

    /// Fails unless every label is at most `d`.
    pub fn check_order(&self, d: usize) -> Result<()> {
        match self.0.iter().find(|&&a| a > d) {
            Some(a) => Err(Error::InvalidAxes(format!(
                "axis {a} exceeds order {d} in {:?}",
                self.0
            ))),
            None => Ok(()),
        }
    }

    /// Axes of `⟨d⟩` not in this tuple, increasing.
    pub fn complement(&self, d: usize) -> IndexTuple {
        IndexTuple((1..=d).filter(|a| !self.0.contains(a)).collect())
    }

    /// Product of the dimensions on these axes (1 when empty).
    pub fn size(&self, dims: &Shape) -> usize {
        self.0.iter().map(|&a| dims.dim(a)).product()
    }
}

impl fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// Fails unless `rows` and `cols` together partition `⟨d⟩`.
pub fn check_partition(rows: &IndexTuple, cols: &IndexTuple, d: usize) -> Result<()> {
    rows.check_order(d)?;
    cols.check_order(d)?;
    if let Some(a) = rows.axes().iter().find(|&&a| cols.contains(a)) {
        return Err(Error::InvalidAxes(format!(
            "axis {a} is in both {rows} and {cols}"
        )));
    }
    if rows.len() + cols.len() != d {
        return Err(Error::InvalidAxes(format!(
            "{rows} and {cols} do not cover all {d} axes"
        )));
    }
    Ok(())
}

/// A matrix expression `M_A^{rows×cols}` of a hypermatrix with shape `dims`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixExpression<T> {
    mat: Matrix<T>,
    row_axes: IndexTuple,
    col_axes: IndexTuple,
    dims: Shape,
}

impl<T: Scalar> MatrixExpression<T> {
    /// Wraps a matrix, checking the partition and the matrix size.
    pub fn new(mat: Matrix<T>, row_axes: IndexTuple, col_axes: IndexTuple, dims: Shape) -> Result<Self> {
        check_partition(&row_axes, &col_axes, dims.order())?;
        let expected = (row_axes.size(&dims), col_axes.size(&dims));
        if mat.shape() != expected {
            return Err(Error::ShapeMismatch {
                left: vec![mat.rows(), mat.cols()],
                right: vec![expected.0, expected.1],
            });
        }
        Ok(MatrixExpression {
            mat,
            row_axes,
            col_axes,
            dims,
        })
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.mat
    }

    pub fn into_matrix(self) -> Matrix<T> {
        self.mat
    }

    pub fn row_axes(&self) -> &IndexTuple {
        &self.row_axes
    }

    pub fn col_axes(&self) -> &IndexTuple {
        &self.col_axes
    }

    pub fn dims(&self) -> &Shape {
        &self.dims
    }

    /// Contra-variant order `p`, the number of row axes.
    pub fn contravariant_order(&self) -> usize {
        self.row_axes.len()
    }

    /// Co-variant order `q`, the number of column axes.
    pub fn covariant_order(&self) -> usize {
        self.col_axes.len()
    }

    /// Reassembles the source hypermatrix by direct index placement.
    pub fn to_hypermatrix(&self) -> Hypermatrix<T> {
        let row_shape = self.dims.select(self.row_axes.axes());
        let col_shape = self.dims.select(self.col_axes.axes());
        let row_axes = self.row_axes.axes();
        let col_axes = self.col_axes.axes();
        let mut ri = vec![0; row_axes.len()];
        let mut ci = vec![0; col_axes.len()];
        Hypermatrix::from_fn(self.dims.clone(), |idx| {
            for (k, &a) in row_axes.iter().enumerate() {
                ri[k] = idx[a - 1];
            }
            for (k, &a) in col_axes.iter().enumerate() {
                ci[k] = idx[a - 1];
            }
            self.mat.at(row_shape.offset_unchecked(&ri), col_shape.offset_unchecked(&ci))
        })
    }
}

/// Row stacking form `V_r(A)`.
pub fn vr<T: Scalar>(m: &Matrix<T>) -> Vec<T> {
    m.as_slice().to_vec()
}

/// Column stacking form `V_c(A)`.
pub fn vc<T: Scalar>(m: &Matrix<T>) -> Vec<T> {
    m.transpose().into_vec()
}

fn split_len(len: usize, s: usize) -> Result<usize> {
    if s == 0 || len % s != 0 {
        return Err(Error::NotDivisible(s, len));
    }
    Ok(len / s)
}

/// `V_r^s(x)`: `t × s`, filled row by row, where `len(x) = s·t`.
pub fn vrs<T: Scalar>(x: &[T], s: usize) -> Result<Matrix<T>> {
    let t = split_len(x.len(), s)?;
    Matrix::new(t, s, x.to_vec())
}

/// `V_c^s(x)`: `s × t`, filled column by column, where `len(x) = s·t`.
pub fn vcs<T: Scalar>(x: &[T], s: usize) -> Result<Matrix<T>> {
    let t = split_len(x.len(), s)?;
    Ok(Matrix::new(t, s, x.to_vec())?.transpose())
}

/// `V_r^s(A) = V_r^s(V_r(A))`.
pub fn vrs_matrix<T: Scalar>(a: &Matrix<T>, s: usize) -> Result<Matrix<T>> {
    vrs(&vr(a), s)
}

/// `V_c^s(A) = V_c^s(V_c(A))`.
pub fn vcs_matrix<T: Scalar>(a: &Matrix<T>, s: usize) -> Result<Matrix<T>> {
    vcs(&vc(a), s)
}

fn check_sigma_len<T: Scalar>(a: &Hypermatrix<T>, sigma: &Permutation) -> Result<()> {
    if sigma.len() != a.order() {
        return Err(Error::LengthMismatch {
            expected: a.order(),
            got: sigma.len(),
        });
    }
    Ok(())
}

/// `A^σ` by direct index permutation: axis `i` of the result is axis `σ(i)`
/// of `A`, so `(A^σ)_{k} = a_{j}` whenever `k_i = j_σ(i)` for all `i`.
pub fn sigma_transpose<T: Scalar>(a: &Hypermatrix<T>, sigma: &Permutation) -> Result<Hypermatrix<T>> {
    check_sigma_len(a, sigma)?;
    let shape = Shape::new(sigma.permute_dims(a.dims()))?;
    let mut j = vec![0; a.order()];
    Ok(Hypermatrix::from_fn(shape, |k| {
        for (i, &s) in sigma.image().iter().enumerate() {
            j[s - 1] = k[i];
        }
        a.as_slice()[a.shape().offset_unchecked(&j)]
    }))
}

/// `A^σ` through `V_{A^σ} = V_A · W^{σ⁻¹}_{[n_σ(1),...,n_σ(d)]}`, the right
/// factor being the transpose of `W^σ_{[n_1,...,n_d]}`.
pub fn sigma_transpose_via_perm<T: Scalar>(
    a: &Hypermatrix<T>,
    sigma: &Permutation,
) -> Result<Hypermatrix<T>> {
    check_sigma_len(a, sigma)?;
    let shape = Shape::new(sigma.permute_dims(a.dims()))?;
    let w = build_perm_matrix(&shape, &sigma.inverse())?;
    Hypermatrix::from_flat(shape, w.left_apply(a.as_slice())?)
}

/// `M_A^{rows×cols}` by direct placement. The tuples may list axes in any
/// order; rows and columns each run in ID order over their listed axes.
pub fn matrix_expression<T: Scalar>(
    a: &Hypermatrix<T>,
    rows: &IndexTuple,
    cols: &IndexTuple,
) -> Result<MatrixExpression<T>> {
    check_partition(rows, cols, a.order())?;
    let row_shape = a.shape().select(rows.axes());
    let col_shape = a.shape().select(cols.axes());
    let mut idx = vec![0; a.order()];
    let mut ri = vec![0; rows.len()];
    let mut ci = vec![0; cols.len()];
    let mut data = Vec::with_capacity(a.as_slice().len());
    for r in 0..row_shape.size() {
        row_shape.fill_index(r, &mut ri);
        for (k, &ax) in rows.axes().iter().enumerate() {
            idx[ax - 1] = ri[k];
        }
        for c in 0..col_shape.size() {
            col_shape.fill_index(c, &mut ci);
            for (k, &ax) in cols.axes().iter().enumerate() {
                idx[ax - 1] = ci[k];
            }
            data.push(a.as_slice()[a.shape().offset_unchecked(&idx)]);
        }
    }
    Ok(MatrixExpression {
        mat: Matrix::new(row_shape.size(), col_shape.size(), data)?,
        row_axes: rows.clone(),
        col_axes: cols.clone(),
        dims: a.shape().clone(),
    })
}

/// `σ_{𝐢_r}: 𝐝 → (𝐢_r, 𝐝∖𝐢_r)` as an image array.
pub fn partition_permutation(rows: &IndexTuple, d: usize) -> Result<Permutation> {
    Permutation::from_blocks(rows.axes(), rows.complement(d).axes())
}

fn require_increasing_rows(rows: &IndexTuple, d: usize) -> Result<()> {
    rows.check_order(d)?;
    if !rows.is_increasing() {
        return Err(Error::InvalidAxes(format!(
            "row axes {rows} must be increasing for vector/matrix conversion"
        )));
    }
    Ok(())
}

fn require_standard_form<T: Scalar>(m: &MatrixExpression<T>) -> Result<()> {
    let d = m.dims.order();
    require_increasing_rows(&m.row_axes, d)?;
    if m.col_axes != m.row_axes.complement(d) {
        return Err(Error::InvalidAxes(format!(
            "column axes {} must be the increasing complement of {}",
            m.col_axes, m.row_axes
        )));
    }
    Ok(())
}

/// `M_A^{𝐢_r×(𝐝∖𝐢_r)} = V_r^{n_{𝐝∖𝐢_r}}(V_A · W^{σ⁻¹}_{[n_σ]})` with `σ = σ_{𝐢_r}`.
pub fn vec_to_matrix_form<T: Scalar>(
    v: &[T],
    dims: &Shape,
    rows: &IndexTuple,
) -> Result<MatrixExpression<T>> {
    let d = dims.order();
    require_increasing_rows(rows, d)?;
    if v.len() != dims.size() {
        return Err(Error::LengthMismatch {
            expected: dims.size(),
            got: v.len(),
        });
    }
    let cols = rows.complement(d);
    let sigma = partition_permutation(rows, d)?;
    let permuted = Shape::new(sigma.permute_dims(dims.dims()))?;
    let w = build_perm_matrix(&permuted, &sigma.inverse())?;
    let mat = vrs(&w.left_apply(v)?, cols.size(dims))?;
    MatrixExpression::new(mat, rows.clone(), cols, dims.clone())
}

/// `V_A = (M ⋉ δ^I_{n_{𝐝∖𝐢_r}})^T · W^{σ_{𝐢_r}}_{[n_1,...,n_d]}`.
///
/// `M ⋉ δ^I_t` equals `V_r(M)^T`, so the row vector `V_r(M)` is used directly.
pub fn matrix_form_to_vec<T: Scalar>(m: &MatrixExpression<T>) -> Result<Vec<T>> {
    require_standard_form(m)?;
    let sigma = partition_permutation(&m.row_axes, m.dims.order())?;
    let w = build_perm_matrix(&m.dims, &sigma)?;
    w.left_apply(&vr(&m.mat))
}

/// Converts `M_A^{𝐢_r×(𝐝∖𝐢_r)}` to `M_A^{𝐣_s×(𝐝∖𝐣_s)}` through the single
/// logical matrix `W^{σ_{𝐢_r}}_{[n]} · W^{σ⁻¹_{𝐣_s}}_{[n_{σ_{𝐣_s}}]}`.
pub fn convert_expression<T: Scalar>(
    m: &MatrixExpression<T>,
    new_rows: &IndexTuple,
) -> Result<MatrixExpression<T>> {
    require_standard_form(m)?;
    let d = m.dims.order();
    require_increasing_rows(new_rows, d)?;
    let sigma_i = partition_permutation(&m.row_axes, d)?;
    let sigma_j = partition_permutation(new_rows, d)?;
    let permuted_j = Shape::new(sigma_j.permute_dims(m.dims.dims()))?;
    let w = compose_lm(
        &build_perm_matrix(&m.dims, &sigma_i)?,
        &build_perm_matrix(&permuted_j, &sigma_j.inverse())?,
    )?;
    let new_cols = new_rows.complement(d);
    let mat = vrs(&w.left_apply(&vr(&m.mat))?, new_cols.size(&m.dims))?;
    MatrixExpression::new(mat, new_rows.clone(), new_cols, m.dims.clone())
}

/// `(M_A^{r₁×r₂})^T = M_A^{r₂×r₁}`.
pub fn transpose_expr<T: Scalar>(m: &MatrixExpression<T>) -> MatrixExpression<T> {
    MatrixExpression {
        mat: m.mat.transpose(),
        row_axes: m.col_axes.clone(),
        col_axes: m.row_axes.clone(),
        dims: m.dims.clone(),
    }
}

fn require_hypercubic<T: Scalar>(a: &Hypermatrix<T>) -> Result<()> {
    if !a.shape().is_hypercubic() {
        return Err(Error::InvalidAxes(format!(
            "symmetry needs equal dimensions, got {}",
            a.shape()
        )));
    }
    Ok(())
}

fn adjacent_transpositions(d: usize) -> impl Iterator<Item = Permutation> {
    (1..d).map(move |k| {
        let mut image: Vec<usize> = (1..=d).collect();
        image.swap(k - 1, k);
        Permutation::new(image).expect("a transposition is a permutation")
    })
}

/// `A^σ = A` for all σ, checked on the adjacent transpositions that generate `S_d`.
pub fn is_symmetric<T: Scalar>(a: &Hypermatrix<T>) -> Result<bool> {
    require_hypercubic(a)?;
    for tau in adjacent_transpositions(a.order()) {
        if sigma_transpose(a, &tau)? != *a {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `A^σ = sgn(σ)·A` for all σ, checked on the adjacent transpositions.
pub fn is_skew_symmetric<T: Scalar>(a: &Hypermatrix<T>) -> Result<bool> {
    require_hypercubic(a)?;
    let negated = a.try_scale(T::from_i64(-1))?;
    for tau in adjacent_transpositions(a.order()) {
        if sigma_transpose(a, &tau)? != negated {
            return Ok(false);
        }
    }
    Ok(true)
}
