//! Worked fixtures built on the contraction and expression machinery: the
//! cross product on ℝ³, the gl(2) Lie bracket, finite-game payoffs and both
//! sides of the Yang–Baxter equation.

use crate::contraction::{contract_bruteforce, eval_multilinear_scalar, eval_multilinear_vector, ContractionSpec};
use crate::error::{Error, Result};
use crate::expression::{matrix_expression, vc, vcs, vr, vrs, IndexTuple, MatrixExpression};
use crate::hypermatrix::Hypermatrix;
use crate::index::Shape;
use crate::matrix::Matrix;
use crate::permutation::{build_perm_matrix, Permutation};
use crate::scalar::Scalar;

/// The printed `M_C^{3×(1,2)}` of the cross product. Column `(i, j)` holds
/// the coordinates of `δ_3^i × δ_3^j`.
pub const CROSS_PRODUCT_MATRIX: [[i64; 9]; 3] = [
    [0, 0, 0, 0, 0, 1, 0, -1, 0],
    [0, 0, -1, 0, 0, 0, 1, 0, 0],
    [0, 1, 0, -1, 0, 0, 0, 0, 0],
];

/// The cross-product structure hypermatrix `C` with axes `(i, j, k)` as a
/// matrix expression with rows `(3)` and columns `(1, 2)`.
pub fn cross_product_expression<T: Scalar>() -> MatrixExpression<T> {
    let mat = Matrix::from_fn(3, 9, |r, c| T::from_i64(CROSS_PRODUCT_MATRIX[r - 1][c - 1]));
    MatrixExpression::new(
        mat,
        IndexTuple::new(vec![3]).expect("valid tuple"),
        IndexTuple::new(vec![1, 2]).expect("valid tuple"),
        Shape::new(vec![3, 3, 3]).expect("valid shape"),
    )
    .expect("fixture dimensions agree")
}

/// `x × y = M_C^{3×(1,2)} ⋉ x ⋉ y`.
pub fn cross_product<T: Scalar>(x: &[T], y: &[T]) -> Result<Vec<T>> {
    eval_multilinear_vector(&cross_product_expression(), &[x, y])
}

/// Vectorization used to identify a 2×2 matrix with a vector of ℝ⁴.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stacking {
    Row,
    Column,
}

impl Stacking {
    pub fn stack<T: Scalar>(self, m: &Matrix<T>) -> Vec<T> {
        match self {
            Stacking::Row => vr(m),
            Stacking::Column => vc(m),
        }
    }

    pub fn unstack<T: Scalar>(self, v: &[T], n: usize) -> Result<Matrix<T>> {
        match self {
            Stacking::Row => vrs(v, n),
            Stacking::Column => vcs(v, n),
        }
    }
}

/// The basis matrix of gl(2) whose stacking is `δ_4^k`.
fn gl2_basis(stacking: Stacking, k: usize) -> Matrix<i64> {
    let mut v = vec![0_i64; 4];
    v[k - 1] = 1;
    stacking.unstack(&v, 2).expect("4 = 2·2")
}

/// Structure matrix `M_C^{k×(i,j)}` (4×16) of gl(2) derived from commutators
/// of the basis induced by `stacking`: column `(i, j)` is the stacking of
/// `[B_i, B_j]`.
pub fn gl2_structure_matrix(stacking: Stacking) -> Matrix<i64> {
    let mut data = vec![0_i64; 64];
    for i in 1..=4 {
        for j in 1..=4 {
            let (bi, bj) = (gl2_basis(stacking, i), gl2_basis(stacking, j));
            let comm = bi
                .matmul(&bj)
                .and_then(|p| p.try_sub(&bj.matmul(&bi)?))
                .expect("0/1 matrices do not overflow");
            for (k, v) in stacking.stack(&comm).into_iter().enumerate() {
                data[k * 16 + (i - 1) * 4 + (j - 1)] = v;
            }
        }
    }
    Matrix::new(4, 16, data).expect("4×16")
}

/// The printed extended δ-list of the gl(2) structure matrix, one dense
/// column per entry. `1−4` and `−1+4` are read as the gloss prints them:
/// `(1,0,0,−4)` and `(−1,0,0,4)`.
pub fn gl2_printed_fixture() -> Matrix<i64> {
    const PRINTED: [[i64; 4]; 16] = [
        [0, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, -1, 0],
        [0, 0, 0, 0],
        [0, -1, 0, 0],
        [0, 0, 0, 0],
        [1, 0, 0, -4],
        [0, 0, 0, 0],
        [0, 0, 1, 0],
        [-1, 0, 0, 4],
        [0, 0, 0, 0],
        [0, 0, -1, 0],
        [0, 0, 0, 0],
        [0, 0, 0, 0],
        [0, 0, 1, 0],
        [0, 0, 0, 0],
    ];
    Matrix::from_fn(4, 16, |r, c| PRINTED[c - 1][r - 1])
}

/// A column where the printed fixture and the commutator-derived structure
/// matrix disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureDiscrepancy {
    /// 1-based column, `(i − 1)·4 + j`.
    pub column: usize,
    pub i: usize,
    pub j: usize,
    pub printed: Vec<i64>,
    pub derived: Vec<i64>,
}

/// Compares the printed fixture with the derived structure matrix in the
/// printed basis `A_1 = E_11, A_2 = E_12, A_3 = E_21, A_4 = E_22`, which is
/// the row-stacking basis.
pub fn gl2_fixture_discrepancies() -> Vec<FixtureDiscrepancy> {
    let printed = gl2_printed_fixture();
    let derived = gl2_structure_matrix(Stacking::Row);
    (1..=16)
        .filter_map(|c| {
            let (p, d) = (printed.col_vec(c), derived.col_vec(c));
            (p != d).then(|| FixtureDiscrepancy {
                column: c,
                i: (c - 1) / 4 + 1,
                j: (c - 1) % 4 + 1,
                printed: p,
                derived: d,
            })
        })
        .collect()
}

/// `[X, Y]` for 2×2 matrices, computed as the matrix whose `V_c` equals
/// `M_C ⋉ V_c(X) ⋉ V_c(Y)` with the column-stacking structure matrix.
pub fn gl2_bracket<T: Scalar>(x: &Matrix<T>, y: &Matrix<T>) -> Result<Matrix<T>> {
    for m in [x, y] {
        if m.shape() != (2, 2) {
            return Err(Error::ShapeMismatch {
                left: vec![2, 2],
                right: vec![m.rows(), m.cols()],
            });
        }
    }
    let structure = gl2_structure_matrix(Stacking::Column);
    let mat = Matrix::from_fn(4, 16, |r, c| T::from_i64(structure.at(r - 1, c - 1)));
    let expr = MatrixExpression::new(
        mat,
        IndexTuple::new(vec![3])?,
        IndexTuple::new(vec![1, 2])?,
        Shape::new(vec![4, 4, 4])?,
    )?;
    let v = eval_multilinear_vector(&expr, &[&vc(x), &vc(y)])?;
    vcs(&v, 2)
}

/// An `n`-player finite game with one payoff hypermatrix per player.
#[derive(Debug, Clone, PartialEq)]
pub struct GamePayoff<T> {
    strategy_counts: Vec<usize>,
    payoffs: Vec<Hypermatrix<T>>,
}

impl<T: Scalar> GamePayoff<T> {
    pub fn new(strategy_counts: Vec<usize>, payoffs: Vec<Hypermatrix<T>>) -> Result<Self> {
        if payoffs.len() != strategy_counts.len() {
            return Err(Error::LengthMismatch {
                expected: strategy_counts.len(),
                got: payoffs.len(),
            });
        }
        for d in &payoffs {
            if d.dims() != strategy_counts.as_slice() {
                return Err(Error::ShapeMismatch {
                    left: strategy_counts.clone(),
                    right: d.dims().to_vec(),
                });
            }
        }
        Ok(GamePayoff {
            strategy_counts,
            payoffs,
        })
    }

    pub fn strategy_counts(&self) -> &[usize] {
        &self.strategy_counts
    }

    pub fn payoffs(&self) -> &[Hypermatrix<T>] {
        &self.payoffs
    }
}

/// `c_i = V_{D_i} ⋉ x_1 ⋉ ⋯ ⋉ x_n` for every player `i`.
pub fn game_payoff<T: Scalar>(g: &GamePayoff<T>, xs: &[&[T]]) -> Result<Vec<T>> {
    g.payoffs
        .iter()
        .map(|d| eval_multilinear_scalar(d, xs))
        .collect()
}

/// An R-matrix of local dimension `N`, stored as an `N×N×N×N` hypermatrix.
#[derive(Debug, Clone, PartialEq)]
pub struct YbeInstance<T> {
    n: usize,
    r: Hypermatrix<T>,
}

impl<T: Scalar> YbeInstance<T> {
    pub fn new(r: Hypermatrix<T>) -> Result<Self> {
        let n = r.dims().first().copied().unwrap_or(0);
        if r.order() != 4 || !r.shape().is_hypercubic() {
            return Err(Error::NonConformable(format!(
                "R must have shape (N,N,N,N), got {}",
                r.shape()
            )));
        }
        Ok(YbeInstance { n, r })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> &Hypermatrix<T> {
        &self.r
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Lhs,
    Rhs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum YbeMethod {
    BruteForce,
    Matrix,
}

/// `T = R ×^4_1 R`, with axes `(R_1, R_2, R_3, R'_2, R'_3, R'_4)`.
fn ybe_t_brute<T: Scalar>(r: &Hypermatrix<T>) -> Result<Hypermatrix<T>> {
    contract_bruteforce(r, r, &ContractionSpec::new(vec![4], vec![1])?)
}

/// `V_T` from `M_T = M_R^{(1,2,3)×4} M_R^{1×(2,3,4)}`.
fn ybe_vt_matrix<T: Scalar>(r: &Hypermatrix<T>) -> Result<Vec<T>> {
    let left = matrix_expression(r, &IndexTuple::new(vec![1, 2, 3])?, &IndexTuple::new(vec![4])?)?;
    let right = matrix_expression(r, &IndexTuple::new(vec![1])?, &IndexTuple::new(vec![2, 3, 4])?)?;
    // M_T has rows (1,2,3) and columns (4,5,6), so V_r(M_T) = V_T
    Ok(vr(&left.matrix().matmul(right.matrix())?))
}

/// `M_T^{σ(1..k)×σ(k+1..6)} = V_r^{N^{6−k}}(V_T · W^{σ⁻¹})` for `σ` given by its image.
fn ybe_convert<T: Scalar>(vt: &[T], n: usize, sigma: &[usize], k: usize) -> Result<Matrix<T>> {
    let sigma = Permutation::new(sigma.to_vec())?;
    let shape = Shape::new(vec![n; 6])?;
    let w = build_perm_matrix(&shape, &sigma.inverse())?;
    vrs(&w.left_apply(vt)?, n.pow(6 - k as u32))
}

/// One side of the Yang–Baxter equation as an order-6 hypermatrix.
///
/// LHS is `(R ×^4_1 R) ×^{(2,6)}_{(3,4)} R` with axes
/// `(T_1, T_3, T_4, T_5, R_1, R_2)`; RHS is `R ×^{(1,2)}_{(3,4)} (R ×^4_1 R)`
/// with axes `(R_3, R_4, T_1, T_2, T_5, T_6)`. The matrix method uses
/// `σ_s = (1,3,4,5,2,6)` and `σ_t = (3,4,1,2,5,6)` on `V_T` and multiplies by
/// `M_R^{(3,4)×(1,2)}`.
pub fn ybe_sides<T: Scalar>(inst: &YbeInstance<T>, side: Side, method: YbeMethod) -> Result<Hypermatrix<T>> {
    let n = inst.n;
    let r = &inst.r;
    let out_shape = Shape::new(vec![n; 6])?;
    match method {
        YbeMethod::BruteForce => {
            let t = ybe_t_brute(r)?;
            match side {
                Side::Lhs => contract_bruteforce(&t, r, &ContractionSpec::new(vec![2, 6], vec![3, 4])?),
                Side::Rhs => contract_bruteforce(r, &t, &ContractionSpec::new(vec![1, 2], vec![3, 4])?),
            }
        }
        YbeMethod::Matrix => {
            let vt = ybe_vt_matrix(r)?;
            let mr = matrix_expression(r, &IndexTuple::new(vec![3, 4])?, &IndexTuple::new(vec![1, 2])?)?;
            let product = match side {
                Side::Lhs => ybe_convert(&vt, n, &[1, 3, 4, 5, 2, 6], 4)?.matmul(mr.matrix())?,
                Side::Rhs => mr.matrix().matmul(&ybe_convert(&vt, n, &[3, 4, 1, 2, 5, 6], 2)?)?,
            };
            Hypermatrix::from_flat(out_shape, product.into_vec())
        }
    }
}

/// Max-abs entry of `LHS − RHS` under the given method.
pub fn ybe_residual_with<T: Scalar>(inst: &YbeInstance<T>, method: YbeMethod) -> Result<f64> {
    let lhs = ybe_sides(inst, Side::Lhs, method)?;
    let rhs = ybe_sides(inst, Side::Rhs, method)?;
    Ok(lhs.try_sub(&rhs)?.max_abs())
}

/// Max-abs entry of `LHS − RHS`, brute-force method.
pub fn ybe_residual<T: Scalar>(inst: &YbeInstance<T>) -> Result<f64> {
    ybe_residual_with(inst, YbeMethod::BruteForce)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cross_product_examples() {
        let e = |i: usize| {
            let mut v = vec![0_i64; 3];
            v[i - 1] = 1;
            v
        };
        assert_eq!(cross_product(&e(1), &e(2)).unwrap(), e(3));
        assert_eq!(cross_product(&e(1), &e(3)).unwrap(), vec![0, -1, 0]);
        let x = [2_i64, -1, 5];
        assert_eq!(cross_product(&x, &x).unwrap(), vec![0, 0, 0]);
        assert!(cross_product(&x, &x[..2]).is_err());
    }

    #[test]
    fn gl2_bracket_examples() {
        let a1 = Matrix::from_rows(&[vec![1_i64, 0], vec![0, 0]]).unwrap();
        let a2 = Matrix::from_rows(&[vec![0_i64, 1], vec![0, 0]]).unwrap();
        assert_eq!(gl2_bracket(&a1, &a2).unwrap(), a2);
        let x = Matrix::from_rows(&[vec![3_i64, -1], vec![4, 2]]).unwrap();
        assert_eq!(gl2_bracket(&x, &x).unwrap(), Matrix::zeros(2, 2));
        assert!(gl2_bracket(&x, &Matrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn gl2_fixture_errata_are_reported() {
        let found = gl2_fixture_discrepancies();
        let cols: Vec<usize> = found.iter().map(|d| d.column).collect();
        assert_eq!(cols, vec![7, 8, 10, 14]);
        assert_eq!(found[0].derived, vec![1, 0, 0, -1]);
        assert_eq!(found[1].derived, vec![0, 1, 0, 0]);
        assert_eq!(found[3].derived, vec![0, -1, 0, 0]);
    }

    #[test]
    fn game_examples() {
        let d = Hypermatrix::new(&[3], vec![1_i64, 2, 3]).unwrap();
        let g = GamePayoff::new(vec![3], vec![d]).unwrap();
        assert_eq!(game_payoff(&g, &[&[0, 1, 0]]).unwrap(), vec![2]);
        let bad = Hypermatrix::new(&[2], vec![1_i64, 2]).unwrap();
        assert!(GamePayoff::new(vec![3], vec![bad]).is_err());
    }

    #[test]
    fn ybe_zero_and_small() {
        let zero = YbeInstance::new(Hypermatrix::<i64>::zeros(Shape::new(vec![2; 4]).unwrap())).unwrap();
        for side in [Side::Lhs, Side::Rhs] {
            for method in [YbeMethod::BruteForce, YbeMethod::Matrix] {
                assert!(ybe_sides(&zero, side, method).unwrap().as_slice().iter().all(|&v| v == 0));
            }
        }
        assert_eq!(ybe_residual(&zero).unwrap(), 0.0);

        let data: Vec<i64> = (0..16).map(|v| (v * 5 % 7) - 3).collect();
        let inst = YbeInstance::new(Hypermatrix::new(&[2, 2, 2, 2], data).unwrap()).unwrap();
        for side in [Side::Lhs, Side::Rhs] {
            assert_eq!(
                ybe_sides(&inst, side, YbeMethod::BruteForce).unwrap(),
                ybe_sides(&inst, side, YbeMethod::Matrix).unwrap()
            );
        }
        assert!(YbeInstance::new(Hypermatrix::<i64>::zeros(Shape::new(vec![2, 3, 2, 2]).unwrap())).is_err());
    }

    #[test]
    fn known_solution_has_zero_residual() {
        // r_{ijkl} = δ_ik δ_jl + δ_il δ_jk + δ_ij δ_kl solves the equation,
        // while its first term alone does not
        let shape = Shape::new(vec![2; 4]).unwrap();
        let r = Hypermatrix::from_fn(shape.clone(), |i| {
            i64::from(i[0] == i[2] && i[1] == i[3])
                + i64::from(i[0] == i[3] && i[1] == i[2])
                + i64::from(i[0] == i[1] && i[2] == i[3])
        });
        let inst = YbeInstance::new(r).unwrap();
        assert_eq!(ybe_residual(&inst).unwrap(), 0.0);
        assert_eq!(ybe_residual_with(&inst, YbeMethod::Matrix).unwrap(), 0.0);
        let id = Hypermatrix::from_fn(shape, |i| i64::from(i[0] == i[2] && i[1] == i[3]));
        assert!(ybe_residual(&YbeInstance::new(id).unwrap()).unwrap() > 0.0);
    }
}
