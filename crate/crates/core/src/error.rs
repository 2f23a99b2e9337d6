use thiserror::Error;

/// Errors produced by body construction, parsing, and transform evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("consecutive polygon vertices {0} and {1} coincide")]
    DuplicateVertex(usize, usize),
    #[error("polygon vertices {0}, {1}, {2} are collinear")]
    CollinearVertices(usize, usize, usize),
    #[error("polygon has zero signed area")]
    ZeroArea,
    #[error("ball dimension must be >= 1")]
    ZeroDimension,
    #[error("ball dimension {0} exceeds the supported maximum of 24")]
    DimensionTooLarge(usize),
    #[error("radius must be positive")]
    NonPositiveRadius,
    #[error("half-length must be positive")]
    NonPositiveHalfLength,
    #[error("frequency has dimension {got}, body has dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("lattice basis is singular")]
    SingularBasis,
    #[error("invalid rational literal {0:?}")]
    ParseRational(String),
    #[error("invalid body specification: {0}")]
    ParseBody(String),
}

pub type Result<T> = std::result::Result<T, Error>;
