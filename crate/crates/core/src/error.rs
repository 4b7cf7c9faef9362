//! Crate-wide error type.

/// Errors surfaced by the library. Diagnostic payloads are carried as `f64`
/// regardless of the working scalar type.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// A Gram matrix of zero states was requested.
    #[error("cannot build a Gram matrix over zero states")]
    DimensionZero,

    /// A pairwise overlap exceeded unit magnitude beyond tolerance.
    #[error("overlap magnitude {value} at ({i},{j}) exceeds 1 beyond tolerance")]
    OverlapOutOfRange { i: usize, j: usize, value: f64 },

    /// The Gram matrix is inconsistent: a diagonal pivot went negative.
    #[error("Gram matrix not positive semidefinite: pivot residual {residual:e} at row {row}")]
    NotPsd { row: usize, residual: f64 },

    /// A truncated Fock space cannot represent the requested object within
    /// its truncation budget.
    #[error("Fock cutoff {cutoff} insufficient ({detail}); suggested cutoff {suggested}")]
    CutoffInsufficient {
        cutoff: usize,
        suggested: usize,
        detail: String,
    },

    /// Analytic-family parameters outside their validity domain.
    #[error("invalid family parameters: {0}")]
    InvalidFamilyParams(String),

    /// A finite embedding was requested for a truly hybrid state.
    #[error("state is truly hybrid entangled; no finite-dimensional embedding exists")]
    TrulyHybridInput,

    /// A state vector failed its unit-norm precondition.
    #[error("state vector norm deviates from 1 by {0:e}")]
    NotNormalized(f64),

    /// Wrong subsystem dimensions for a two-qubit operation.
    #[error("expected subsystem dimensions {expected:?}, got {got:?}")]
    WrongDims {
        expected: Vec<usize>,
        got: Vec<usize>,
    },

    /// Composite dimensions inconsistent with the operator or request.
    #[error("dimension mismatch: {0}")]
    DimsMismatch(String),

    /// A quantity that must be real carried a non-negligible imaginary part.
    #[error("result has non-real residue {0:e}")]
    NonRealResult(f64),

    /// The witness threshold diverges at unit transmissivity.
    #[error("witness threshold is unbounded at eta = 1")]
    DegenerateEta,

    /// Geometric-mixture parameter outside (0, 1).
    #[error("mixture parameter x = {0} must lie strictly inside (0, 1)")]
    InvalidX(f64),

    /// A domain value failed its invariants.
    #[error("invalid state: {0}")]
    InvalidState(String),

    /// Malformed state-file input.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
