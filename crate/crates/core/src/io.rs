//! `.hm` hypermatrix documents, the δ-notation codec and dense
//! materialization of logical matrices.
//!
//! A document is a JSON object with exactly the fields `shape`, `data` and
//! `scalar_kind`. When `scalar_kind` is absent it is `"int"` if every entry
//! is an integer literal and `"float"` otherwise.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Number;

use crate::error::{Error, Result};
use crate::hypermatrix::Hypermatrix;
use crate::index::Shape;
use crate::matrix::Matrix;
use crate::permutation::LogicalMatrix;
use crate::scalar::{Scalar, ScalarKind};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypermatrixDocument {
    pub shape: Vec<usize>,
    pub data: Vec<Number>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scalar_kind: Option<String>,
}

/// A hypermatrix on either scalar backend.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyHypermatrix {
    Int(Hypermatrix<i64>),
    Float(Hypermatrix<f64>),
}

impl AnyHypermatrix {
    pub fn kind(&self) -> ScalarKind {
        match self {
            AnyHypermatrix::Int(_) => ScalarKind::Int,
            AnyHypermatrix::Float(_) => ScalarKind::Float,
        }
    }

    pub fn shape(&self) -> &Shape {
        match self {
            AnyHypermatrix::Int(a) => a.shape(),
            AnyHypermatrix::Float(a) => a.shape(),
        }
    }

    /// The float view; integers convert exactly when `|v| ≤ 2^53`.
    pub fn to_float(&self) -> Hypermatrix<f64> {
        match self {
            AnyHypermatrix::Int(a) => a.map(|v| v as f64),
            AnyHypermatrix::Float(a) => a.clone(),
        }
    }
}

impl From<Hypermatrix<i64>> for AnyHypermatrix {
    fn from(a: Hypermatrix<i64>) -> Self {
        AnyHypermatrix::Int(a)
    }
}

impl From<Hypermatrix<f64>> for AnyHypermatrix {
    fn from(a: Hypermatrix<f64>) -> Self {
        AnyHypermatrix::Float(a)
    }
}

impl HypermatrixDocument {
    pub fn from_hypermatrix<T: Scalar>(a: &Hypermatrix<T>) -> Result<Self> {
        let data = a
            .as_slice()
            .iter()
            .enumerate()
            .map(|(k, &v)| match T::KIND {
                // Display of an i64 is its exact decimal form
                ScalarKind::Int => v
                    .to_string()
                    .parse::<i64>()
                    .map(Number::from)
                    .map_err(|_| Error::Document(format!("data[{k}]: {v} is not an integer"))),
                ScalarKind::Float => Number::from_f64(v.to_f64())
                    .ok_or_else(|| Error::Document(format!("data[{k}]: non-finite float {v}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(HypermatrixDocument {
            shape: a.dims().to_vec(),
            data,
            scalar_kind: Some(T::KIND.as_str().to_string()),
        })
    }

    /// Validates the document and builds the hypermatrix it describes.
    pub fn to_hypermatrix(&self) -> Result<AnyHypermatrix> {
        let shape = Shape::new(self.shape.clone())
            .map_err(|e| Error::Document(format!("shape: {e}")))?;
        if self.data.len() != shape.size() {
            return Err(Error::Document(format!(
                "data: shape {shape} needs {} entries, got {}",
                shape.size(),
                self.data.len()
            )));
        }
        let kind = match self.scalar_kind.as_deref() {
            Some("int") => ScalarKind::Int,
            Some("float") => ScalarKind::Float,
            Some(other) => {
                return Err(Error::Document(format!(
                    "scalar_kind: expected \"int\" or \"float\", got {other:?}"
                )))
            }
            None if self.data.iter().all(|n| n.is_i64()) => ScalarKind::Int,
            None => ScalarKind::Float,
        };
        match kind {
            ScalarKind::Int => {
                let data = self
                    .data
                    .iter()
                    .enumerate()
                    .map(|(k, n)| {
                        n.as_i64().ok_or_else(|| {
                            Error::Document(format!("data[{k}]: {n} is not a 64-bit integer"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(AnyHypermatrix::Int(Hypermatrix::from_flat(shape, data)?))
            }
            ScalarKind::Float => {
                let data = self
                    .data
                    .iter()
                    .enumerate()
                    .map(|(k, n)| match n.as_f64() {
                        Some(v) if v.is_finite() => Ok(v),
                        _ => Err(Error::Document(format!("data[{k}]: {n} is not a finite float"))),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(AnyHypermatrix::Float(Hypermatrix::from_flat(shape, data)?))
            }
        }
    }
}

/// Parses a document from text.
pub fn parse_hm(text: &str) -> Result<AnyHypermatrix> {
    let doc: HypermatrixDocument =
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
    doc.to_hypermatrix()
}

/// Serializes a hypermatrix. Floats use the shortest decimal form that reads
/// back to the same value.
pub fn hm_to_string<T: Scalar>(a: &Hypermatrix<T>) -> Result<String> {
    let doc = HypermatrixDocument::from_hypermatrix(a)?;
    serde_json::to_string(&doc).map_err(|e| Error::Document(e.to_string()))
}

pub fn any_to_string(a: &AnyHypermatrix) -> Result<String> {
    match a {
        AnyHypermatrix::Int(a) => hm_to_string(a),
        AnyHypermatrix::Float(a) => hm_to_string(a),
    }
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

pub fn read_hm(path: impl AsRef<Path>) -> Result<AnyHypermatrix> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    parse_hm(&text).map_err(|e| match e {
        Error::Document(msg) => Error::Document(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn write_hm<T: Scalar>(a: &Hypermatrix<T>, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut text = hm_to_string(a)?;
    text.push('\n');
    fs::write(path, text).map_err(|e| io_error(path, e))
}

pub fn write_any(a: &AnyHypermatrix, path: impl AsRef<Path>) -> Result<()> {
    match a {
        AnyHypermatrix::Int(a) => write_hm(a, path),
        AnyHypermatrix::Float(a) => write_hm(a, path),
    }
}

/// Parses `d<m>[c_1,...,c_n]`. Whitespace is ignored.
pub fn parse_delta(text: &str) -> Result<LogicalMatrix> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let err = |msg: &str| Error::Parse(format!("{msg} in δ-notation {text:?}"));
    let body = compact.strip_prefix('d').ok_or_else(|| err("missing leading 'd'"))?;
    let open = body.find('[').ok_or_else(|| err("missing '['"))?;
    let list = body[open + 1..]
        .strip_suffix(']')
        .ok_or_else(|| err("missing trailing ']'"))?;
    let parse_uint = |s: &str| -> Result<usize> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err(&format!("{s:?} is not an unsigned integer")));
        }
        s.parse::<usize>().map_err(|_| err(&format!("{s:?} is too large")))
    };
    let m = parse_uint(&body[..open])?;
    let cols = list.split(',').map(parse_uint).collect::<Result<Vec<_>>>()?;
    LogicalMatrix::new(m, cols).map_err(|e| match e {
        Error::IndexOutOfRange { axis, value, bound } => Error::Parse(format!(
            "entry {axis} is {value}, outside 1..={bound}, in δ-notation {text:?}"
        )),
        other => other,
    })
}

/// Canonical δ-notation with no spaces.
pub fn print_delta(l: &LogicalMatrix) -> String {
    l.to_string()
}

/// The dense `m × n` 0/1 matrix whose column `j` is `δ_m^{c_j}`.
pub fn densify<T: Scalar>(l: &LogicalMatrix) -> Matrix<T> {
    let cols = l.cols();
    Matrix::from_fn(l.rows(), l.ncols(), |i, j| {
        if cols[j - 1] == i {
            T::one()
        } else {
            T::zero()
        }
    })
}
