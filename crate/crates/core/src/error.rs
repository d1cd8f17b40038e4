use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("mixed Lie vector representations")]
    RepresentationMismatch,

    #[error("unsupported matrix dimension {0} (expected 2..=5)")]
    UnsupportedDimension(usize),

    #[error("matrix is not special unitary (deviation {0:e})")]
    NotSpecialUnitary(f64),

    #[error("quaternion is not a unit (|q|^2 = {0})")]
    NotUnitQuaternion(f64),

    #[error("quaternion is not imaginary (real part {0})")]
    NotImaginary(f64),

    #[error("degree {degree} out of range for {len} values")]
    DegreeOutOfRange { degree: usize, len: usize },

    #[error("spanning vectors are linearly dependent")]
    DegeneratePlane,

    #[error("deformation parameter must lie in (0, 1), got {0}")]
    InvalidLambda(f64),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("action is not free: {0}")]
    NotFree(String),

    #[error("locus kind does not match parameters: {0}")]
    LocusMismatch(String),

    #[error("point is not on the requested locus (deviation {0:e})")]
    NotOnLocus(f64),

    #[error("sigma_3 = {0} is not divisible by 8")]
    Sigma3NotDivisible(i128),
}

pub type Result<T> = std::result::Result<T, Error>;
