//! Error type shared by all modules.

use thiserror::Error;

/// Everything that can go wrong when validating inputs or running a
/// computation. Each variant is a distinct, matchable failure kind so that
/// callers (in particular the CLI) can map them to distinct exit codes.
#[derive(Debug, Error)]
pub enum Error {
    /// Input matrix is too far from self-adjoint.
    #[error("matrix is not Hermitian: max|M - M†| = {defect:e} exceeds tolerance {tol:e}")]
    NotHermitian { defect: f64, tol: f64 },

    /// An eigenvalue lies below the negative clipping band of a matrix that
    /// must be positive semidefinite.
    #[error("matrix is not positive semidefinite: min eigenvalue {min_eigenvalue:e}")]
    NotPositive { min_eigenvalue: f64 },

    /// Density matrix trace differs from one beyond tolerance.
    #[error("trace must be 1, got {trace:.17e}")]
    TraceNotOne { trace: f64 },

    /// A perturbation must be traceless.
    #[error("perturbation is not traceless: |trace| = {trace_abs:e}")]
    NotTraceless { trace_abs: f64 },

    /// Priors must be strictly positive and sum to one.
    #[error("invalid priors ({pi0}, {pi1}): must be strictly positive and sum to 1")]
    InvalidPriors { pi0: f64, pi1: f64 },

    /// Classical probability vector fails validation.
    #[error("invalid probability distribution: {detail}")]
    InvalidDistribution { detail: String },

    /// Two operands had incompatible dimensions.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// A tensor product or tensor power would exceed the dimension cap.
    #[error("dimension {dim} exceeds the configured cap {cap}")]
    SizeCapExceeded { dim: usize, cap: usize },

    /// The iterative eigensolver failed to converge.
    #[error("eigensolver failed to converge on a {dim}x{dim} matrix (residual off-diagonal {off_diagonal:e})")]
    EigenFailed { dim: usize, off_diagonal: f64 },

    /// A quantity that must be real carried an imaginary residue above
    /// tolerance, or an internal identity failed to hold numerically.
    #[error("numerical consistency failure in {what}: residual {residual:e}")]
    NumericalConsistency { what: &'static str, residual: f64 },

    /// Hellinger-arc entropies require full-rank states.
    #[error("rank-deficient input: {context} requires full-rank states")]
    RankDeficient { context: &'static str },

    /// The Chernoff metric is singular on rank-deficient states.
    #[error("singular metric: state has eigenvalues at zero, metric denominator vanishes")]
    SingularMetric,

    /// The Kraus operators of a channel do not sum to the identity.
    #[error("channel is not trace preserving: completeness residual {residual:e}")]
    NotTracePreserving { residual: f64 },

    /// A matrix entry parsed from a file is NaN or infinite.
    #[error("non-finite entry at row {row}, column {col}")]
    NonFiniteEntry { row: usize, col: usize },

    /// Malformed JSON input.
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    /// A parameter was outside its documented range.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
