//! `hyperstp`: command-line front end for the hypermatrix library.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 verification failure.

use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use hyperstp::appendix::{verify_appendix, ErrataRegistry};
use hyperstp::applications::{ybe_residual_with, ybe_sides};
use hyperstp::contraction::{contract_bruteforce, contract_via_expression};
use hyperstp::expression::{matrix_expression, sigma_transpose_via_perm};
use hyperstp::io::{densify, hm_to_string, print_delta, read_hm, write_hm, HypermatrixDocument};
use hyperstp::permutation::build_perm_matrix;
use hyperstp::stp::{mm_stp, mv_stp, vv_stp};
use hyperstp::{
    AnyHypermatrix, ContractionSpec, Hypermatrix, IndexTuple, Matrix, Permutation, Scalar, Shape,
    Side, YbeInstance, YbeMethod,
};

const EXIT_USAGE: u8 = 1;
const EXIT_DATA: u8 = 2;
const EXIT_VERIFY: u8 = 3;

/// Relative tolerance for cross-checking float contractions.
const FLOAT_AGREEMENT_TOL: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(name = "hyperstp", version, about = "Hypermatrix algebra via semi-tensor products")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the σ-permutation matrix W^σ for the given dimensions.
    Permmat {
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        sigma: Vec<usize>,
        /// Print the dense 0/1 matrix instead of δ-notation.
        #[arg(long)]
        dense: bool,
    },
    /// Write the σ-transpose of a hypermatrix.
    Transpose {
        #[arg(long, value_delimiter = ',', required = true)]
        sigma: Vec<usize>,
        input: PathBuf,
        output: PathBuf,
    },
    /// Print the matrix expression with the given row axes as JSON.
    Mexpr {
        /// Row axes, comma separated. Columns are the remaining axes in
        /// increasing order. An empty value selects no row axes.
        #[arg(long, default_value = "")]
        rows: AxisList,
        input: PathBuf,
    },
    /// Contract two hypermatrices along paired axes.
    Contract {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long = "a-axes", default_value = "")]
        a_axes: AxisList,
        #[arg(long = "b-axes", default_value = "")]
        b_axes: AxisList,
        #[arg(long, value_enum, default_value_t = ContractMethod::Expr)]
        method: ContractMethod,
        output: PathBuf,
    },
    /// Semi-tensor product of two operands.
    Stp {
        #[arg(long, value_enum)]
        op: StpOp,
        a: PathBuf,
        b: PathBuf,
    },
    /// Evaluate the Yang-Baxter equation for an order-4 hypercubic R.
    Ybe {
        #[arg(long)]
        r: PathBuf,
        /// Print one side as a document instead of the residual.
        #[arg(long, value_enum)]
        side: Option<SideArg>,
        #[arg(long, value_enum, default_value_t = MethodArg::Brute)]
        method: MethodArg,
    },
    /// Regenerate every embedded appendix table and compare.
    VerifyAppendix {
        /// Errata registry to use instead of the embedded one.
        #[arg(long)]
        registry: Option<PathBuf>,
    },
}

/// A comma-separated list of 1-based axes; the empty string is the empty list.
#[derive(Debug, Clone)]
struct AxisList(Vec<usize>);

impl FromStr for AxisList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().is_empty() {
            return Ok(AxisList(Vec::new()));
        }
        s.split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()
            .map(AxisList)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ContractMethod {
    Brute,
    Expr,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StpOp {
    Mm,
    Mv,
    Vv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SideArg {
    Lhs,
    Rhs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Brute,
    Matrix,
}

/// A failed command and the exit code it maps to.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn data(e: impl Display) -> Self {
        Failure {
            code: EXIT_DATA,
            message: e.to_string(),
        }
    }

    fn verify(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_VERIFY,
            message: message.into(),
        }
    }
}

impl From<hyperstp::Error> for Failure {
    fn from(e: hyperstp::Error) -> Self {
        Failure::data(e)
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let outcome = run_cli(std::env::args_os());
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    ExitCode::from(outcome.code)
}

/// What one invocation produced.
#[derive(Debug)]
struct Outcome {
    code: u8,
    stdout: String,
    stderr: String,
}

/// Runs one invocation with `args[0]` as the program name. All output is
/// collected so callers decide where it goes.
fn run_cli<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let mut stdout = String::new();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout,
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match run(cli.command, &mut stdout) {
        Ok(()) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(f) => Outcome {
            code: f.code,
            stdout,
            stderr: format!("error: {}\n", f.message),
        },
    }
}

/// Appends one line of standard output.
fn emit(out: &mut String, text: impl Display) {
    out.push_str(&text.to_string());
    out.push('\n');
}

fn run(command: Command, out: &mut String) -> CmdResult {
    match command {
        Command::Permmat { dims, sigma, dense } => permmat(dims, sigma, dense, out),
        Command::Transpose { sigma, input, output } => transpose(sigma, input, output),
        Command::Mexpr { rows, input } => mexpr(rows, input, out),
        Command::Contract {
            a,
            b,
            a_axes,
            b_axes,
            method,
            output,
        } => contract(a, b, a_axes, b_axes, method, output),
        Command::Stp { op, a, b } => stp(op, a, b, out),
        Command::Ybe { r, side, method } => ybe(r, side, method, out),
        Command::VerifyAppendix { registry } => verify(registry, out),
    }
}

fn permmat(dims: Vec<usize>, sigma: Vec<usize>, dense: bool, out: &mut String) -> CmdResult {
    let shape = Shape::new(dims)?;
    let w = build_perm_matrix(&shape, &Permutation::new(sigma)?)?;
    if dense {
        let m: Matrix<i64> = densify(&w);
        for i in 0..m.rows() {
            let row: Vec<String> = m.row_vec(i + 1).iter().map(|v| v.to_string()).collect();
            emit(out, row.join(" "));
        }
    } else {
        emit(out, print_delta(&w));
    }
    Ok(())
}

fn transpose(sigma: Vec<usize>, input: PathBuf, output: PathBuf) -> CmdResult {
    let sigma = Permutation::new(sigma)?;
    match read_hm(&input)? {
        AnyHypermatrix::Int(a) => write_hm(&sigma_transpose_via_perm(&a, &sigma)?, &output)?,
        AnyHypermatrix::Float(a) => write_hm(&sigma_transpose_via_perm(&a, &sigma)?, &output)?,
    }
    Ok(())
}

fn mexpr_json<T: Scalar>(a: &Hypermatrix<T>, rows: &IndexTuple) -> Result<String, Failure> {
    let cols = rows.complement(a.order());
    let m = matrix_expression(a, rows, &cols)?;
    let flat = Hypermatrix::new(&[m.matrix().rows(), m.matrix().cols()], m.matrix().as_slice().to_vec())?;
    let doc = HypermatrixDocument::from_hypermatrix(&flat)?;
    let value = json!({
        "rows": rows.axes(),
        "cols": cols.axes(),
        "dims": a.dims(),
        "shape": doc.shape,
        "data": doc.data,
        "scalar_kind": T::KIND.as_str(),
    });
    Ok(value.to_string())
}

fn mexpr(rows: AxisList, input: PathBuf, out: &mut String) -> CmdResult {
    let rows = IndexTuple::new(rows.0)?;
    let text = match read_hm(&input)? {
        AnyHypermatrix::Int(a) => mexpr_json(&a, &rows)?,
        AnyHypermatrix::Float(a) => mexpr_json(&a, &rows)?,
    };
    emit(out, text);
    Ok(())
}

/// Evaluates both contraction methods, requires agreement and returns the
/// requested one.
fn contract_checked<T: Scalar>(
    a: &Hypermatrix<T>,
    b: &Hypermatrix<T>,
    spec: &ContractionSpec,
    method: ContractMethod,
) -> Result<Hypermatrix<T>, Failure> {
    let brute = contract_bruteforce(a, b, spec)?;
    let expr = contract_via_expression(a, b, spec)?;
    if !brute.approx_equal(&expr, FLOAT_AGREEMENT_TOL)? {
        return Err(Failure::verify(
            "brute-force and matrix-expression contractions disagree",
        ));
    }
    Ok(match method {
        ContractMethod::Brute => brute,
        ContractMethod::Expr => expr,
    })
}

fn contract(
    a: PathBuf,
    b: PathBuf,
    a_axes: AxisList,
    b_axes: AxisList,
    method: ContractMethod,
    output: PathBuf,
) -> CmdResult {
    let spec = ContractionSpec::new(a_axes.0, b_axes.0)?;
    match (read_hm(&a)?, read_hm(&b)?) {
        (AnyHypermatrix::Int(a), AnyHypermatrix::Int(b)) => {
            write_hm(&contract_checked(&a, &b, &spec, method)?, &output)?
        }
        (a, b) => write_hm(&contract_checked(&a.to_float(), &b.to_float(), &spec, method)?, &output)?,
    }
    Ok(())
}

/// Reads an order-1 document as a vector.
fn as_vector<T: Scalar>(a: &Hypermatrix<T>, name: &str) -> Result<Vec<T>, Failure> {
    if a.order() != 1 {
        return Err(Failure::data(format!(
            "{name} must have order 1, got shape {}",
            a.shape()
        )));
    }
    Ok(a.as_slice().to_vec())
}

/// Reads an order-2 document as a matrix. An order-1 document is a column.
fn as_matrix<T: Scalar>(a: &Hypermatrix<T>, name: &str) -> Result<Matrix<T>, Failure> {
    match a.dims() {
        [n] => Ok(Matrix::column(&a.as_slice()[..*n])),
        [r, c] => Ok(Matrix::new(*r, *c, a.as_slice().to_vec())?),
        _ => Err(Failure::data(format!(
            "{name} must have order 1 or 2, got shape {}",
            a.shape()
        ))),
    }
}

fn stp_typed<T: Scalar>(op: StpOp, a: &Hypermatrix<T>, b: &Hypermatrix<T>) -> Result<String, Failure> {
    match op {
        StpOp::Vv => Ok(vv_stp(&as_vector(a, "A")?, &as_vector(b, "B")?)?.to_string()),
        StpOp::Mv => {
            let y = mv_stp(&as_matrix(a, "A")?, &as_vector(b, "B")?)?;
            Ok(hm_to_string(&Hypermatrix::new(&[y.len()], y)?)?)
        }
        StpOp::Mm => {
            let c = mm_stp(&as_matrix(a, "A")?, &as_matrix(b, "B")?)?;
            Ok(hm_to_string(&Hypermatrix::new(&[c.rows(), c.cols()], c.into_vec())?)?)
        }
    }
}

fn stp(op: StpOp, a: PathBuf, b: PathBuf, out: &mut String) -> CmdResult {
    let text = match (read_hm(&a)?, read_hm(&b)?) {
        (AnyHypermatrix::Int(a), AnyHypermatrix::Int(b)) => stp_typed(op, &a, &b)?,
        (a, b) => stp_typed(op, &a.to_float(), &b.to_float())?,
    };
    emit(out, text);
    Ok(())
}

fn ybe_typed<T: Scalar>(r: Hypermatrix<T>, side: Option<SideArg>, method: YbeMethod) -> Result<String, Failure> {
    let inst = YbeInstance::new(r)?;
    match side {
        None => Ok(ybe_residual_with(&inst, method)?.to_string()),
        Some(s) => {
            let side = match s {
                SideArg::Lhs => Side::Lhs,
                SideArg::Rhs => Side::Rhs,
            };
            Ok(hm_to_string(&ybe_sides(&inst, side, method)?)?)
        }
    }
}

fn ybe(r: PathBuf, side: Option<SideArg>, method: MethodArg, out: &mut String) -> CmdResult {
    let method = match method {
        MethodArg::Brute => YbeMethod::BruteForce,
        MethodArg::Matrix => YbeMethod::Matrix,
    };
    let text = match read_hm(&r)? {
        AnyHypermatrix::Int(r) => ybe_typed(r, side, method)?,
        AnyHypermatrix::Float(r) => ybe_typed(r, side, method)?,
    };
    emit(out, text);
    Ok(())
}

fn verify(registry: Option<PathBuf>, out: &mut String) -> CmdResult {
    let registry = match registry {
        None => ErrataRegistry::embedded(),
        Some(path) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Failure::data(format!("{}: {e}", path.display())))?;
            ErrataRegistry::parse(&text)?
        }
    };
    let report = verify_appendix(&registry)?;
    for table in &report.tables {
        emit(out, table.status_line());
        for line in table.diff_lines() {
            emit(out, line);
        }
    }
    for orphan in &report.orphaned {
        emit(
            out,
            format!(
                "ORPHANED registry entry appendix={} d={} n={} label={}",
                orphan.appendix, orphan.d, orphan.n, orphan.label
            ),
        );
    }
    emit(
        out,
        format!(
            "summary: {} tables, {} PASS, {} EXPECTED-MISMATCH, {} MISMATCH, {} orphaned",
        report.tables.len(),
        report.count(hyperstp::Verdict::Pass),
        report.count(hyperstp::Verdict::ExpectedMismatch),
        report.count(hyperstp::Verdict::Mismatch),
            report.orphaned.len()
        ),
    );
    if report.is_success() {
        Ok(())
    } else {
        Err(Failure::verify("appendix verification failed"))
    }
}
