//! Simulation of a beamsplitter gate that conditionally prepares squeezed
//! Schrödinger cat states.
//!
//! A vacuum signal is mixed with a non-Gaussian resource (a squeezed cubic
//! phase state, or a Fock state) on an asymmetric beamsplitter, and the
//! momentum quadrature of the resource port is measured by homodyne
//! detection. The signal port is left in a superposition of two squeezed,
//! mutually displaced copies of the input.
//!
//! Units: ħ = 1 throughout, quadratures are dimensionless.
//!
//! - [`numerics`]: complex Airy function, Hermite polynomials, adaptive
//!   Gauss–Legendre quadrature.
//! - [`states`]: input and reference wavefunctions sampled on grids.
//! - [`gate`]: the conditional-state pipeline (quadrature and closed-form).
//! - [`semiclassical`]: the c-number in/out mapping of the gate.
//! - [`analysis`]: fidelity, Wigner transform and parameter sweeps.
//! - [`cli`]: command-line front end writing CSV data and run manifests.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod gate;
pub mod numerics;
pub mod semiclassical;
pub mod states;

pub use error::{Error, Result};
pub use numerics::ComplexValue;
