//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by measure validation, kernel evaluation and the solvers.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// An atom or density carries a weight that is zero, negative or non-finite.
    #[error("non-positive weight: {0}")]
    NonPositiveWeight(String),

    /// An atom location lies outside the open interval (0, 1).
    #[error("atom location out of range (0,1): {0}")]
    AtomOutOfRange(String),

    /// The measure consists of a single atom at 0, which is excluded.
    #[error("measure concentrated at 0 is not admissible")]
    MassAtZeroOnly,

    /// The density does not have a finite integral over [0,1].
    #[error("measure has infinite mass: {0}")]
    InfiniteMass(String),

    /// The measure has no mass at all.
    #[error("empty measure")]
    EmptyMeasure,

    /// A structural parameter is outside its admissible domain
    /// (ratios not in (0,1), malformed tables, non-positive tolerances, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Adaptive quadrature did not reach the requested tolerance.
    #[error("quadrature failure: {0}")]
    QuadratureFailure(String),

    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    DomainError(String),

    /// The time-stepping scheme produced a non-monotone or non-positive
    /// solution, signalling instability; retry with a smaller step.
    #[error("stepping scheme produced non-monotone output at step {step} (t = {t})")]
    NonMonotoneOutput { step: usize, t: f64 },

    /// Two solution series do not share compatible grids.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// A diagnostic window selects no points.
    #[error("empty window")]
    EmptyWindow,
}

pub type Result<T> = std::result::Result<T, Error>;
