//! Special functions and quadrature.

pub mod airy;
pub mod hermite;
pub mod quadrature;

pub use airy::{airy_ai, airy_ai_pair, airy_ai_prime, airy_ai_scaled, airy_zeta};
pub use hermite::{hermite, hermite_function};
pub use quadrature::{integrate_complex, QuadratureResult, QuadratureSpec};

/// Complex amplitude; ħ = 1 throughout.
pub type ComplexValue = num_complex::Complex64;

/// Number of e-folds at which a Gaussian envelope `e^{-u²/2}` falls to 1e-16
/// of its peak: `u² / 2 = ln 10^16`.
pub const ENVELOPE_EFOLDS: f64 = 36.841_361_487_904_734;
