use thiserror::Error;

use crate::bases::Violation;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension {0}: must be at least 1")]
    InvalidDimension(usize),

    #[error("unsupported dimension {0}: built-in construction requires a prime")]
    UnsupportedDimension(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid subset: {0}")]
    InvalidSubset(String),

    #[error("index {index} out of range for {what} (limit {limit})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        limit: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("enumeration budget exceeded: {required} evaluations requested, limit is {limit} (set NUB_ALLOW_LARGE=1 to lift it)")]
    BudgetExceeded { required: u128, limit: u64 },

    #[error("matrix is not unitary (residual {residual:e})")]
    NotUnitary { residual: f64 },

    #[error("Gram matrix is not Hermitian (residual {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("principal minor has imaginary part {imag:e}")]
    ComplexMinor { imag: f64 },

    #[error("vector sums differ: {left} vs {right}")]
    SumMismatch { left: f64, right: f64 },

    #[error("basis set validation failed: {0}")]
    Validation(Violation),

    #[error("empty input")]
    EmptyInput,

    #[error("heterogeneous input: set {index} has (n, d) = ({n}, {d}), expected ({expected_n}, {expected_d})")]
    Heterogeneous {
        index: usize,
        n: usize,
        d: usize,
        expected_n: usize,
        expected_d: usize,
    },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: parse error at line {line}, column {column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
