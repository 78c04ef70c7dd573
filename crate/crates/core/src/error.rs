//! Error type shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while configuring or running a simulation.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied value is outside the accepted domain
    /// (negative coupling ratio, non-normalized state, unknown preset, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A quantity that must be real/positive for the requested formula lost
    /// that property, e.g. a negative discriminant under a square root.
    #[error("numerical domain error: {0}")]
    NumericalDomain(String),

    /// The truncated photon basis cannot represent the state to the requested
    /// accuracy (norm leaked past the boundary).
    #[error("truncation error: {0}")]
    Truncation(String),

    /// A density matrix failed a physicality check (trace, hermiticity or
    /// positivity outside tolerance).
    #[error("density validation error: {0}")]
    Validation(String),

    /// The fidelity optimizer disagreed with the closed-form bound.
    #[error("optimization error: {0}")]
    Optimization(String),

    /// Underlying I/O failure while emitting results.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
