use thiserror::Error;

use crate::cube::DimSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UsoError {
    #[error("dimension {dim} out of range for a {n}-cube")]
    DimensionOutOfRange { dim: usize, n: usize },

    #[error("dimension {n} exceeds the cap of {cap}")]
    DimensionTooLarge { n: usize, cap: usize },

    #[error("outmap table has {got} entries, expected {expected}")]
    TableLength { got: usize, expected: usize },

    #[error("outmap value {mask} at vertex {vertex} is not a subset of [{n}]")]
    MaskOutOfRange { vertex: usize, mask: u32, n: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("malformed face [{lower}, {upper}]")]
    MalformedFace { lower: DimSet, upper: DimSet },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error(
        "not a cube orientation: edge {vertex} along dimension {dim} is claimed inconsistently"
    )]
    NotAnOrientation { vertex: DimSet, dim: usize },

    #[error("not a unique sink orientation")]
    NotAUso,

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("search budget of {0} expansions exceeded")]
    BudgetExceeded(u64),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix is not a P-matrix")]
    NotPMatrix,

    #[error("matrix is not symmetric positive definite")]
    NotSpd,

    #[error("right-hand side is not generic: coordinate {index} vanishes at vertex {vertex}")]
    NotGeneric { vertex: DimSet, index: usize },

    #[error("zero pivot at dimension {0}")]
    ZeroPivot(usize),

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("malformed combed spec: {0}")]
    MalformedSpec(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, UsoError>;
