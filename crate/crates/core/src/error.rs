use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty point set")]
    EmptyPointSet,
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("polyhedron is empty")]
    EmptyPolyhedron,
    #[error("halfspace normal is the zero vector")]
    ZeroNormal,
    #[error("cone contains a line")]
    NotStrictlyConvex,
    #[error("cone rays do not span the ambient space")]
    NotFullDimensional,
    #[error("complement is not contained in the cone")]
    ComplementNotInCone,
    #[error("complement of the body in the cone is not compact")]
    ComplementNotCompact,
    #[error("coconvex body has empty interior")]
    EmptyInterior,
    #[error("bodies live in different cones")]
    ConeMismatch,
    #[error("scale factor must be positive, got {0}")]
    NonPositiveScale(String),
    #[error("invalid truncation: {0}")]
    InvalidTruncation(String),
    #[error("expected {expected} marked points, found {found}")]
    WrongMarkedCount { expected: usize, found: usize },
    #[error("expected {expected} bodies, found {found}")]
    WrongBodyCount { expected: usize, found: usize },
    #[error("vector length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("body is not full-dimensional")]
    Degenerate,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("invalid rational literal {0:?}")]
    ParseScalar(String),
    #[error("invalid experiment configuration: {0}")]
    InvalidConfig(String),
    #[error("random generation gave up after {0} attempts")]
    ResampleBudget(usize),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}
