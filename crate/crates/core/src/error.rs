use thiserror::Error;

use crate::numerics::ComplexValue;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The magnitude of Ai(z) (or of a product containing it) is not
    /// representable as a finite `f64`.
    #[error("Airy function overflow at z = {z}")]
    AiryOverflow { z: ComplexValue },

    /// A gate parameter set drives the closed-form output out of the
    /// representable range.
    #[error("parameters out of range: {0}")]
    ParameterRange(String),

    #[error(
        "quadrature did not converge after {subdivisions} subdivisions \
         (estimate {estimate}, error {error_estimate:e})"
    )]
    NonConvergence {
        estimate: ComplexValue,
        error_estimate: f64,
        subdivisions: usize,
    },

    /// Quadrature failure while evaluating a wavefunction on a grid; carries
    /// the grid coordinate with the largest error estimate.
    #[error("quadrature failed at x = {x}: {source}")]
    GridQuadrature {
        x: f64,
        #[source]
        source: Box<Error>,
    },

    /// The homodyne measurement line misses the semiclassical resource curve.
    #[error("outside semiclassical support (radicand {radicand})")]
    OutsideSupport { radicand: f64 },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),
}
