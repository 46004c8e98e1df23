//! Error type shared by every module of the kernel.

use thiserror::Error;

/// Everything that can go wrong inside the kernel.
///
/// The variants are deliberately coarse: callers either recover by fixing
/// their input (the first three) or treat the failure as a verification
/// result in its own right (the last two).
#[derive(Debug, Error)]
pub enum CoreError {
    /// The deformation parameter is outside [-1, 1] or equal to zero.
    #[error("invalid deformation parameter: {0}")]
    InvalidParameter(String),

    /// Two operands built over different deformation parameters were mixed.
    #[error("mismatched deformation parameters: {left} vs {right}")]
    ParameterMismatch { left: String, right: String },

    /// Matrix/grid shapes do not line up.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// Input outside the mathematical domain of an operation
    /// (point off the admissible sphere subset, |t| > 1, empty grid, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical procedure could not certify its answer at the requested
    /// resolution (phase step too large, integer rounding gap exceeded, ...).
    #[error("resolution failure: {0}")]
    Resolution(String),

    /// Malformed textual input (rationals, element records, CSV fields).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
