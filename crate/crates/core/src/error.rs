//! Error type shared across the crate.

/// Everything that can go wrong in core operations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Two points from different spaces were combined, or a map was applied
    /// to a point outside its domain space.
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),

    /// A coordinate or parameter is outside the valid range of its space.
    #[error("domain error: {0}")]
    Domain(String),

    /// A constructor was given inconsistent data.
    #[error("invalid construction: {0}")]
    Invalid(String),

    /// The adaptive integrator could not proceed; carries the partial state
    /// reached before failure.
    #[error("integration failed at t={t:.6e}: step {step:.3e} fell below min_step (r={r:.17}, theta={theta:.17})")]
    Integration {
        t: f64,
        step: f64,
        r: f64,
        theta: f64,
    },

    /// An operation that needs at least one point got none.
    #[error("empty point cloud: {0}")]
    EmptyCloud(String),

    /// A documented precondition was violated by the inputs.
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
