use thiserror::Error;

/// Errors produced by the exact-algebra kernel.
///
/// Everything here is a contract violation of some operation; internal
/// self-checks that fail (which would indicate a bug, not bad input) use the
/// `Internal` variant so callers can tell the two apart.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("diagonal entry {0} is not one of 1, 0, -1")]
    InvalidDiagonalEntry(String),

    #[error("nontrivial quadratic space required (dimension must be at least 1)")]
    EmptyForm,

    #[error("quadratic form must be nonzero for this construction")]
    ZeroForm,

    #[error("subspace is not isotropic: {0}")]
    NotIsotropic(String),

    #[error("requested isotropic dimension {requested} exceeds maximum {max}")]
    IsotropicDimTooLarge { requested: usize, max: usize },

    #[error("elements belong to different algebras")]
    AlgebraMismatch,

    #[error("algebra carries no parity labels (needed for the graded tensor product)")]
    MissingParity,

    #[error("grading is incompatible with the module action: {0}")]
    IncompatibleGrading(String),

    #[error("Wedderburn block of dimension {0} does not split over Q(i)")]
    BlockSplitFailed(usize),

    #[error("Ext classes are not composable: {0}")]
    NotComposable(String),

    #[error("classification requires corank <= 1, got corank {0}")]
    UnsupportedClassification(usize),

    #[error("point does not lie on the quadric")]
    PointOffQuadric,

    #[error("point must be nonzero")]
    ZeroVector,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal self-check failed: {0}")]
    Internal(String),
}
