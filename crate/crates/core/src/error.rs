use thiserror::Error;

/// Errors raised by the solvers and their file formats.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// An elimination pivot fell below the breakdown threshold.
    #[error("pivot breakdown at row {row} (|pivot| = {pivot:e})")]
    PivotBreakdown { row: usize, pivot: f64 },

    #[error("matrix is singular to working precision")]
    Singular,

    /// `a[k+1] * c[k] <= 0` for the reported off-diagonal pair.
    #[error("matrix is not symmetrizable: a[{index}]*c[{prev}] <= 0", prev = index - 1)]
    NotSymmetrizable { index: usize },

    /// Explicit inverse products left the representable range.
    #[error("explicit inverse out of range at index {index}; use transposed solves instead")]
    OracleFallbackRequired { index: usize },

    #[error("cannot split {n} unknowns over {p} PEs (need n >= 2p)")]
    TooManyPes { n: usize, p: usize },

    #[error("no convergence after {iterations} iterations (residual proxy {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("worker for PE {pe} panicked: {message}")]
    WorkerPanic { pe: usize, message: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
