//! Physicists' Hermite polynomials and normalized Hermite functions.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Largest supported polynomial degree.
pub const MAX_DEGREE: usize = 64;

/// H_n(x) by the recurrence `H_{k+1} = 2x·H_k − 2k·H_{k−1}`.
pub fn hermite(n: usize, x: f64) -> Result<f64> {
    if n > MAX_DEGREE {
        return Err(Error::InvalidParameter(format!(
            "Hermite degree {n} exceeds {MAX_DEGREE}"
        )));
    }
    let mut prev = 1.0;
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = 2.0 * x;
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `(π^{1/4} √(2ⁿ n!))^{-1} H_n(x) e^{-x²/2}`, the n-photon Fock wavefunction.
///
/// Uses the normalized three-term recurrence so that neither `H_n` nor
/// `2ⁿ n!` is formed explicitly.
pub fn hermite_function(n: usize, x: f64) -> Result<f64> {
    if n > MAX_DEGREE {
        return Err(Error::InvalidParameter(format!(
            "Fock number {n} exceeds {MAX_DEGREE}"
        )));
    }
    let mut prev = PI.powf(-0.25) * (-0.5 * x * x).exp();
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = 2f64.sqrt() * x * prev;
    for k in 1..n {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}
