use thiserror::Error;

/// Errors raised by weight evaluation, geometry and the searches built on top.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: space has dimension {expected}, vector has {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("operation requires dimension {expected}, space has dimension {got}")]
    UnsupportedDimension { expected: usize, got: usize },

    #[error("vector has zero weight")]
    ZeroWeight,

    #[error("space is not positive definite")]
    NotPositiveDefinite,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no radial samples bracket direction {theta} rad")]
    Unbracketed { theta: f64 },

    #[error("sum of squared sum/difference weights vanished")]
    DegenerateSigma,

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    #[error("invalid space descriptor: {0}")]
    Descriptor(String),
}

pub type Result<T> = std::result::Result<T, Error>;
