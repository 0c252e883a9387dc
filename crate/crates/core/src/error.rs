//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by matrix validation, numeric routines, file handling and
/// catalog evaluation.
#[derive(Debug, Error)]
pub enum Error {
    /// Input matrix is not square.
    #[error("matrix is not square: {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    /// Two operands have incompatible dimensions.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// Hermiticity violated beyond tolerance.
    #[error("matrix is not Hermitian: max |m[i][j] - conj(m[j][i])| = {deviation:.3e} exceeds {tol:.3e}")]
    NonHermitianInput { deviation: f64, tol: f64 },

    /// An iterative eigenvalue / singular value routine failed to converge.
    #[error("numerical failure: {0}")]
    NumericalFailure(&'static str),

    /// A PSD-only operation received a matrix with an eigenvalue below `-tol_psd`.
    #[error("negative eigenvalue {lambda:.3e} below -{tol:.3e}")]
    NegativeEigenvalue { lambda: f64, tol: f64 },

    /// Exponent outside the supported range.
    #[error("invalid exponent {value}: expected {expected}")]
    InvalidExponent { value: f64, expected: &'static str },

    /// Matrix has an eigenvalue below `-tol_psd`, so it is not a state.
    #[error("operator is not positive semidefinite: min eigenvalue {lambda:.3e}")]
    NotPositive { lambda: f64 },

    /// Trace differs from one beyond tolerance.
    #[error("trace {trace} differs from 1 by more than {tol:.3e}")]
    TraceNotOne { trace: f64, tol: f64 },

    /// Prior weight outside `[0, 1]`.
    #[error("invalid prior {0}: expected a value in [0, 1]")]
    InvalidPrior(f64),

    /// A scalar parameter outside its documented range.
    #[error("parameter {name} = {value} out of range: expected {expected}")]
    ParamOutOfRange {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    /// Requested rank incompatible with the dimension.
    #[error("invalid rank {rank} for dimension {dim}")]
    InvalidRank { rank: usize, dim: usize },

    /// Matrix file could not be parsed.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// Scalar function evaluated outside its domain.
    #[error("domain error: {name} = {value} not in {expected}")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    /// Inequality record evaluated against a pair it does not apply to.
    #[error("record {record} does not apply to this pair: {reason}")]
    DomainMismatch {
        record: &'static str,
        reason: &'static str,
    },

    /// A tagged equality family failed to achieve equality within tolerance.
    #[error(
        "equality violation: record {record} at family point t = {t} has |slack| = {slack:.3e}"
    )]
    EqualityViolation { record: String, t: f64, slack: f64 },

    /// Underlying I/O failure, annotated with the path.
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
