use thiserror::Error;

/// Errors reported by state constructors, channels, and quantifiers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not Hermitian (max |m - m†| = {0:.3e})")]
    NotHermitian(f64),

    #[error("trace deviates from 1 by {0:.3e}")]
    NonUnitTrace(f64),

    #[error("operator has eigenvalue {0:.3e} below the admissible floor")]
    NotPositiveSemidefinite(f64),

    #[error("state vector norm deviates from 1 by {0:.3e}")]
    NotNormalized(f64),

    #[error("{name} = {value} outside [{lo}, {hi}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("projector family violates orthogonality/idempotence by {0:.3e}")]
    NotOrthogonal(f64),

    #[error("projector family violates completeness by {0:.3e}")]
    NotComplete(f64),

    #[error("eigenvalue labels must be pairwise distinct")]
    DuplicateLabels,

    #[error("observable must be nondegenerate (all projectors rank 1)")]
    DegenerateObservable,

    #[error("probabilities must be nonnegative and sum to 1 (violation {0:.3e})")]
    InvalidProbabilities(f64),

    #[error("relative entropy diverges: {0:.3e} of the state escapes the reference support")]
    SupportViolation(f64),

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off:.3e})")]
    EigenNoConvergence { sweeps: usize, off: f64 },

    #[error("state deserialization failed: {0}")]
    Deserialize(String),
}

pub type Result<T> = std::result::Result<T, Error>;
