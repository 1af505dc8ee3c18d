//! Error types shared across the crate.

/// Errors produced by configuration validation and numerical routines.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// Branch points too close together (or too close to zero) for
    /// double-precision quadrature to separate them.
    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    /// An argument outside the documented domain of an operation.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A cross-check that should hold to round-off failed, which points at a
    /// quadrature or series bug rather than bad input.
    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),

    /// A numerical computation produced an unusable result (e.g. a
    /// non-positive discretized determinant).
    #[error("numeric failure: {0}")]
    NumericFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
