use thiserror::Error;

/// Errors surfaced by the toolkit. Theorem-guaranteed invariants are
/// enforced with assertions instead; a panic there means a bug, not bad
/// input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is not square ({rows} rows, {cols} cols)")]
    NonSquareMatrix { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("division by zero")]
    DivisionByZero,

    #[error("empty vertex list")]
    EmptyVertexList,

    #[error("polytope is not full-dimensional")]
    NotFullDimensional,

    #[error("origin is not strictly interior to the polytope")]
    OriginNotInterior,

    #[error("dimension {n} exceeds the supported ceiling {max}")]
    UnsupportedDimension { n: usize, max: usize },

    #[error("coordinate {value} exceeds the supported magnitude {max}")]
    CoordinateTooLarge { value: i64, max: i64 },

    #[error("operation requires a simplicial polytope")]
    NotSimplicial,

    #[error("operation requires a two-dimensional polytope (got n = {n})")]
    NotTwoDimensional { n: usize },

    #[error("operation requires a Fano polytope: {reason}")]
    NotFano { reason: String },

    #[error("invalid weights: {reason}")]
    InvalidWeights { reason: String },

    #[error("cutoff {got} too small, need at least {min}")]
    CutoffTooSmall { got: u32, min: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
