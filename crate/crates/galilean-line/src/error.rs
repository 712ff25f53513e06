//! Error types shared across modules.

use thiserror::Error;

/// Operands that cannot be combined (mismatched truncation order, degree,
/// grid or dimension).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// Inputs outside the domain where an operation is defined.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DomainError {
    #[error("time-dependent rotation not allowed here")]
    TimeDependentRotation,
    #[error("element is not of Galilei form (constant rotation, linear translation): {0}")]
    NotGalilei(String),
    #[error("finite-difference step must be positive, got {0}")]
    NonPositiveStep(f64),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// Malformed input data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("matrix is not antisymmetric at entry ({0},{1})")]
    NotAntisymmetric(usize, usize),
    #[error("exponential series does not terminate in the exact field: angle jet must vanish at t = 0")]
    NonNilpotent,
    #[error("malformed serialized value: {0}")]
    Malformed(String),
}
