//! Dense hypermatrix algebra with σ-permutation matrices, matrix
//! expressions, the semi-tensor product family and contracted products.
//!
//! Public indices are 1-based. Storage order is the natural ID order: the
//! first axis is most significant and the last axis varies fastest.

pub mod appendix;
pub mod applications;
pub mod contraction;
pub mod error;
pub mod expression;
pub mod hypermatrix;
pub mod index;
pub mod io;
pub mod matrix;
pub mod permutation;
pub mod scalar;
pub mod stp;

pub use appendix::{appendix_table, verify_appendix, AppendixEntry, ErrataRegistry, Verdict};
pub use applications::{GamePayoff, Side, YbeInstance, YbeMethod};
pub use contraction::{ContractionSpec, HyperVector, OntoMethod};
pub use error::{Error, Result};
pub use expression::{IndexTuple, MatrixExpression};
pub use hypermatrix::Hypermatrix;
pub use index::{MultiIndex, Shape};
pub use io::AnyHypermatrix;
pub use matrix::Matrix;
pub use permutation::{LogicalMatrix, Permutation};
pub use scalar::{Scalar, ScalarKind};
