use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("point lies within the exclusion radius of source {index} (squared distance {distance_sq:.3e})")]
    CoincidentSource { index: usize, distance_sq: f64 },

    #[error("coordinate {index} is not finite ({value})")]
    NonFiniteCoordinate { index: usize, value: f64 },

    #[error("weight {index} must be strictly positive and finite, got {weight}")]
    NonPositiveWeight { index: usize, weight: f64 },

    #[error("a source set needs at least one source")]
    EmptySourceSet,

    #[error("{sources} sources but {weights} weights")]
    WeightCountMismatch { sources: usize, weights: usize },

    #[error("radius {0} is outside [0, 1/2)")]
    DeltaOutOfRange(f64),

    #[error("displacement has norm {norm}, expected {radius}")]
    NotOnSphere { norm: f64, radius: f64 },

    #[error("dimension {dim} is not supported here: {reason}")]
    UnsupportedDimension { dim: usize, reason: &'static str },

    #[error("source {index} lies inside the search region or within {margin:.1e} of it")]
    SourceInsideRegion { index: usize, margin: f64 },

    #[error("brute-force oracle supports D <= {max}, got {dim}")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("invalid region: {0}")]
    InvalidRegion(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no sign change found for the polynomial on ({lo}, {hi}]")]
    RootNotBracketed { lo: f64, hi: f64 },
}
