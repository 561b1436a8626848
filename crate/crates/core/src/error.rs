use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {value} out of range 1..={bound} on axis {axis}")]
    IndexOutOfRange {
        axis: usize,
        value: usize,
        bound: usize,
    },

    #[error("multi-index has {got} entries, shape has order {expected}")]
    OrderMismatch { expected: usize, got: usize },

    #[error("flat rank {rank} out of range 1..={size}")]
    RankOutOfRange { rank: usize, size: usize },

    #[error("dimension on axis {axis} is zero")]
    ZeroDimension { axis: usize },

    #[error("total size of shape {dims:?} overflows the index type")]
    SizeOverflow { dims: Vec<usize> },

    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch { left: Vec<usize>, right: Vec<usize> },

    #[error("integer overflow in {op}")]
    Overflow { op: &'static str },

    #[error("{0} is not a permutation of 1..={1}")]
    NotAPermutation(String, usize),

    #[error("invalid axis tuple: {0}")]
    InvalidAxes(String),

    #[error("{0} does not divide {1}")]
    NotDivisible(usize, usize),

    #[error("non-conformable operands: {0}")]
    NonConformable(String),

    #[error("operation not supported by the {backend} backend: {op}")]
    Unsupported {
        backend: &'static str,
        op: &'static str,
    },

    #[error("no appendix table for d={d}, n={n}, label={label}")]
    UnknownTable { d: usize, n: usize, label: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("malformed document: {0}")]
    Document(String),

    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },
}
