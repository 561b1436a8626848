//! Contracted products, hypervectors, multilinear evaluation and the
//! unary/binary/k-ary operators built from contraction.
//!
//! [`contract_bruteforce`] is the reference; every other route must agree
//! with it exactly on the integer backend.

use crate::error::{Error, Result};
use crate::expression::{matrix_expression, IndexTuple};
use crate::hypermatrix::Hypermatrix;
use crate::index::Shape;
use crate::matrix::Matrix;
use crate::permutation::{build_perm_matrix, Permutation};
use crate::scalar::Scalar;
use crate::stp::{kron_chain, mm_stp};

/// Pairs axis `a_axes[t]` of `A` with axis `b_axes[t]` of `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionSpec {
    pub a_axes: IndexTuple,
    pub b_axes: IndexTuple,
}

impl ContractionSpec {
    pub fn new(a_axes: impl Into<Vec<usize>>, b_axes: impl Into<Vec<usize>>) -> Result<Self> {
        let a_axes = IndexTuple::new(a_axes)?;
        let b_axes = IndexTuple::new(b_axes)?;
        if a_axes.len() != b_axes.len() {
            return Err(Error::InvalidAxes(format!(
                "contraction pairs {a_axes} with {b_axes}: lengths differ"
            )));
        }
        Ok(ContractionSpec { a_axes, b_axes })
    }

    /// The empty spec, giving the outer product.
    pub fn outer() -> Self {
        ContractionSpec {
            a_axes: IndexTuple::empty(),
            b_axes: IndexTuple::empty(),
        }
    }

    /// Number of contracted pairs `s`.
    pub fn len(&self) -> usize {
        self.a_axes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a_axes.is_empty()
    }

    /// Checks axis ranges and the pairwise dimension equalities.
    pub fn validate(&self, a: &Shape, b: &Shape) -> Result<()> {
        self.a_axes.check_order(a.order())?;
        self.b_axes.check_order(b.order())?;
        for (&x, &y) in self.a_axes.axes().iter().zip(self.b_axes.axes()) {
            if a.dim(x) != b.dim(y) {
                return Err(Error::NonConformable(format!(
                    "axis {x} of A has dimension {} but axis {y} of B has dimension {}",
                    a.dim(x),
                    b.dim(y)
                )));
            }
        }
        Ok(())
    }

    /// Shape of the result: free axes of `A` then free axes of `B`, each in
    /// ascending order.
    pub fn output_shape(&self, a: &Shape, b: &Shape) -> Result<Shape> {
        let fa = self.a_axes.complement(a.order());
        let fb = self.b_axes.complement(b.order());
        let mut dims = a.select(fa.axes()).dims().to_vec();
        dims.extend_from_slice(b.select(fb.axes()).dims());
        Shape::new(dims)
    }
}

/// `A ×^{a_axes}_{b_axes} B` by direct summation over the contracted
/// indices in ID order.
pub fn contract_bruteforce<T: Scalar>(
    a: &Hypermatrix<T>,
    b: &Hypermatrix<T>,
    spec: &ContractionSpec,
) -> Result<Hypermatrix<T>> {
    spec.validate(a.shape(), b.shape())?;
    let free_a = spec.a_axes.complement(a.order());
    let free_b = spec.b_axes.complement(b.order());
    let out_shape = spec.output_shape(a.shape(), b.shape())?;
    let sum_shape = a.shape().select(spec.a_axes.axes());

    let mut ia = vec![0; a.order()];
    let mut ib = vec![0; b.order()];
    let mut out_idx = vec![0; out_shape.order()];
    let mut k = vec![0; sum_shape.order()];
    let mut data = Vec::with_capacity(out_shape.size());
    for o in 0..out_shape.size() {
        out_shape.fill_index(o, &mut out_idx);
        let (oa, ob) = out_idx.split_at(free_a.len());
        for (&ax, &v) in free_a.axes().iter().zip(oa) {
            ia[ax - 1] = v;
        }
        for (&ax, &v) in free_b.axes().iter().zip(ob) {
            ib[ax - 1] = v;
        }
        let mut acc = T::zero();
        for s in 0..sum_shape.size() {
            sum_shape.fill_index(s, &mut k);
            for (t, (&x, &y)) in spec.a_axes.axes().iter().zip(spec.b_axes.axes()).enumerate() {
                ia[x - 1] = k[t];
                ib[y - 1] = k[t];
            }
            let term = a.as_slice()[a.shape().offset_unchecked(&ia)]
                .try_mul(b.as_slice()[b.shape().offset_unchecked(&ib)])?;
            acc = acc.try_add(term)?;
        }
        data.push(acc);
    }
    Hypermatrix::from_flat(out_shape, data)
}

/// `M_C^{free_A×free_B} = M_A^{free_A×a_axes} · M_B^{b_axes×free_B}`.
pub fn contract_via_expression<T: Scalar>(
    a: &Hypermatrix<T>,
    b: &Hypermatrix<T>,
    spec: &ContractionSpec,
) -> Result<Hypermatrix<T>> {
    spec.validate(a.shape(), b.shape())?;
    let free_a = spec.a_axes.complement(a.order());
    let free_b = spec.b_axes.complement(b.order());
    let ma = matrix_expression(a, &free_a, &spec.a_axes)?;
    let mb = matrix_expression(b, &spec.b_axes, &free_b)?;
    let mc = ma.matrix().matmul(mb.matrix())?;
    // rows run over free_A and columns over free_B, both in ID order, so the
    // row-major data of M_C is the ID-ordered data of C
    Hypermatrix::from_flat(spec.output_shape(a.shape(), b.shape())?, mc.into_vec())
}

/// How [`onto_contract`] evaluates the product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OntoMethod {
    /// `V_C^T = M_A^{(𝐝∖𝐫_s)×𝐫_s} · V_B^T`.
    Expression,
    /// `V_C = V_{A^σ} ⋉ V_B^T` with `σ: 𝐝 → (𝐫_s, 𝐝∖𝐫_s)`.
    Stp,
}

/// The onto contracted product `A ×_{𝐫_s} B`, where `B` has shape
/// `(n_{r_1}, ..., n_{r_s})`. Equals `A ×^{𝐫_s}_{(1,...,s)} B`.
pub fn onto_contract<T: Scalar>(
    a: &Hypermatrix<T>,
    b: &Hypermatrix<T>,
    rs: &IndexTuple,
    method: OntoMethod,
) -> Result<Hypermatrix<T>> {
    let d = a.order();
    rs.check_order(d)?;
    if !rs.is_increasing() {
        return Err(Error::InvalidAxes(format!("onto axes {rs} must be increasing")));
    }
    let rs_shape = a.shape().select(rs.axes());
    if b.shape() != &rs_shape {
        return Err(Error::ShapeMismatch {
            left: rs_shape.dims().to_vec(),
            right: b.dims().to_vec(),
        });
    }
    let free = rs.complement(d);
    let out_shape = a.shape().select(free.axes());
    let data = match method {
        OntoMethod::Expression => {
            let ma = matrix_expression(a, &free, rs)?;
            ma.matrix().matvec(b.as_slice())?
        }
        OntoMethod::Stp => {
            let sigma = Permutation::from_blocks(rs.axes(), free.axes())?;
            let permuted = Shape::new(sigma.permute_dims(a.dims()))?;
            let w = build_perm_matrix(&permuted, &sigma.inverse())?;
            let va_sigma = Matrix::row(&w.left_apply(a.as_slice())?);
            mm_stp(&va_sigma, &Matrix::column(b.as_slice()))?.into_vec()
        }
    };
    Hypermatrix::from_flat(out_shape, data)
}

/// A rank-one hypermatrix given by its factor vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperVector<T> {
    factors: Vec<Vec<T>>,
}

impl<T: Scalar> HyperVector<T> {
    pub fn new(factors: Vec<Vec<T>>) -> Result<Self> {
        if let Some(k) = factors.iter().position(Vec::is_empty) {
            return Err(Error::ZeroDimension { axis: k + 1 });
        }
        Ok(HyperVector { factors })
    }

    pub fn factors(&self) -> &[Vec<T>] {
        &self.factors
    }

    pub fn shape(&self) -> Result<Shape> {
        Shape::new(self.factors.iter().map(Vec::len).collect::<Vec<_>>())
    }
}

/// The hypermatrix with entry `x_1^{i_1} ⋯ x_d^{i_d}` at `(i_1, ..., i_d)`.
pub fn hypervector_expand<T: Scalar>(h: &HyperVector<T>) -> Result<Hypermatrix<T>> {
    let refs: Vec<&[T]> = h.factors.iter().map(Vec::as_slice).collect();
    Hypermatrix::from_flat(h.shape()?, kron_chain(&refs)?)
}

fn check_vectors<T: Scalar>(dims: &[usize], xs: &[&[T]]) -> Result<()> {
    if xs.len() != dims.len() {
        return Err(Error::LengthMismatch {
            expected: dims.len(),
            got: xs.len(),
        });
    }
    for (k, (x, &n)) in xs.iter().zip(dims).enumerate() {
        if x.len() != n {
            return Err(Error::NonConformable(format!(
                "argument {} has length {} but its axis has dimension {n}",
                k + 1,
                x.len()
            )));
        }
    }
    Ok(())
}

/// Right-multiplies a matrix by `x_1 ⋉ ⋯ ⋉ x_k` one factor at a time.
fn stp_chain_right<T: Scalar>(mut m: Matrix<T>, xs: &[&[T]]) -> Result<Matrix<T>> {
    for x in xs {
        m = mm_stp(&m, &Matrix::column(x))?;
    }
    Ok(m)
}

/// `π(x_1, ..., x_d) = V_Π ⋉ x_1 ⋉ ⋯ ⋉ x_d`.
pub fn eval_multilinear_scalar<T: Scalar>(pi: &Hypermatrix<T>, xs: &[&[T]]) -> Result<T> {
    check_vectors(pi.dims(), xs)?;
    let m = stp_chain_right(Matrix::row(pi.as_slice()), xs)?;
    Ok(m.as_slice()[0])
}

/// `π(x_1, ..., x_d) = M_Π ⋉ x_1 ⋉ ⋯ ⋉ x_d` for an expression with one row axis.
pub fn eval_multilinear_vector<T: Scalar>(
    m: &crate::expression::MatrixExpression<T>,
    xs: &[&[T]],
) -> Result<Vec<T>> {
    if m.contravariant_order() != 1 {
        return Err(Error::InvalidAxes(format!(
            "expected exactly one row axis, got {}",
            m.row_axes()
        )));
    }
    let col_dims = m.dims().select(m.col_axes().axes());
    check_vectors(col_dims.dims(), xs)?;
    Ok(stp_chain_right(m.matrix().clone(), xs)?.into_vec())
}

/// `T(x_1, ..., x_r; ω_1, ..., ω_s) = (ω_s ⋉ ⋯ ⋉ ω_1) M_Ω^{𝐣_s×𝐢_r} ⋉ x_1 ⋉ ⋯ ⋉ x_r`.
///
/// Axes `1..=r` of `Ω` are the vector slots and axes `r+1..=r+s` the
/// covector slots, so `ω_q` pairs with axis `r+q`.
pub fn eval_tensor<T: Scalar>(
    omega: &Hypermatrix<T>,
    covectors: &[&[T]],
    vectors: &[&[T]],
) -> Result<T> {
    let (r, s) = (vectors.len(), covectors.len());
    if omega.order() != r + s {
        return Err(Error::LengthMismatch {
            expected: omega.order(),
            got: r + s,
        });
    }
    if !omega.shape().is_hypercubic() {
        return Err(Error::NonConformable(format!(
            "tensor dimensions must all be equal, got {}",
            omega.shape()
        )));
    }
    let (vec_dims, co_dims) = omega.dims().split_at(r);
    check_vectors(vec_dims, vectors)?;
    check_vectors(co_dims, covectors)?;

    let rows = IndexTuple::new((r + 1..=r + s).collect::<Vec<_>>())?;
    let cols = IndexTuple::full(r);
    let m = matrix_expression(omega, &rows, &cols)?;

    // ω_s ⋉ ⋯ ⋉ ω_1 of row vectors equals ω_1 ⊗ ⋯ ⊗ ω_s
    let mut left = Matrix::row(&[T::one()]);
    for w in covectors.iter().rev() {
        left = mm_stp(&left, &Matrix::row(w))?;
    }
    let lm = left.matmul(m.matrix())?;
    Ok(stp_chain_right(lm, vectors)?.as_slice()[0])
}

fn check_block<T: Scalar>(a: &Hypermatrix<T>, d: usize, blocks: usize) -> Result<()> {
    if a.order() != d * blocks {
        return Err(Error::NonConformable(format!(
            "operator of order {} cannot act in {blocks} blocks of order {d}",
            a.order()
        )));
    }
    let lead = &a.dims()[..d];
    for k in 1..blocks {
        if &a.dims()[k * d..(k + 1) * d] != lead {
            return Err(Error::NonConformable(format!(
                "block {} of {} does not repeat the leading block {:?}",
                k + 1,
                a.shape(),
                lead
            )));
        }
    }
    Ok(())
}

/// Contracts the trailing `d` axes of `a` with all axes of `b`.
fn apply_last_block<T: Scalar>(a: &Hypermatrix<T>, b: &Hypermatrix<T>) -> Result<Hypermatrix<T>> {
    let d = b.order();
    let start = a.order() - d;
    if a.dims()[start..] != *b.dims() {
        return Err(Error::ShapeMismatch {
            left: a.dims()[start..].to_vec(),
            right: b.dims().to_vec(),
        });
    }
    let spec = ContractionSpec::new((start + 1..=a.order()).collect::<Vec<_>>(), (1..=d).collect::<Vec<_>>())?;
    contract_via_expression(a, b, &spec)
}

/// `A ×^{d+1..2d}_{1..d} B`.
pub fn unary_apply<T: Scalar>(a: &Hypermatrix<T>, b: &Hypermatrix<T>) -> Result<Hypermatrix<T>> {
    kary_apply(a, &[b])
}

/// `(A ×^{2d+1..3d}_{1..d} B) ×^{d+1..2d}_{1..d} C`.
pub fn binary_apply<T: Scalar>(
    a: &Hypermatrix<T>,
    b: &Hypermatrix<T>,
    c: &Hypermatrix<T>,
) -> Result<Hypermatrix<T>> {
    kary_apply(a, &[b, c])
}

/// Applies `k` operands to an order-`(k+1)d` operator. Operand 1 binds the
/// last block, operand 2 the block before it, and so on, which for `k = 2`
/// is exactly the nesting of [`binary_apply`].
pub fn kary_apply<T: Scalar>(a: &Hypermatrix<T>, operands: &[&Hypermatrix<T>]) -> Result<Hypermatrix<T>> {
    let Some(first) = operands.first() else {
        return Err(Error::InvalidAxes("at least one operand is required".into()));
    };
    let d = first.order();
    check_block(a, d, operands.len() + 1)?;
    let mut cur = a.clone();
    for b in operands {
        if b.dims() != &a.dims()[..d] {
            return Err(Error::ShapeMismatch {
                left: a.dims()[..d].to_vec(),
                right: b.dims().to_vec(),
            });
        }
        cur = apply_last_block(&cur, b)?;
    }
    Ok(cur)
}
