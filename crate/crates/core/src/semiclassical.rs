//! c-number in/out mapping of the gate.
//!
//! The measured momentum of the resource port is replaced by its outcome
//! `y_m` in the Heisenberg-picture relations, which makes the map from the
//! input signal point `(q₁(0), p₁(0))` to the output two-valued. The two
//! destinations locate the two copies of the output cat.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gate::{FockGateConfig, GateConfig};
use crate::states::PerfectCatSpec;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhasePoint {
    pub q: f64,
    pub p: f64,
}

impl PhasePoint {
    pub const ORIGIN: PhasePoint = PhasePoint { q: 0.0, p: 0.0 };

    pub fn new(q: f64, p: f64) -> Self {
        Self { q, p }
    }
}

/// The two output destinations of one input point. `minus.q ≤ plus.q` and
/// both share the same momentum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BranchPair {
    pub minus: PhasePoint,
    pub plus: PhasePoint,
}

impl BranchPair {
    fn symmetric(center: f64, half: f64, p: f64) -> Self {
        Self {
            minus: PhasePoint::new(center - half, p),
            plus: PhasePoint::new(center + half, p),
        }
    }

    /// Half the coordinate distance between the destinations.
    pub fn half_spacing(&self) -> f64 {
        0.5 * (self.plus.q - self.minus.q)
    }
}

fn outside(radicand: f64) -> Error {
    Error::OutsideSupport { radicand }
}

/// Cubic gate: `q_out = ρq₁(0) ∓ (τ/√(3γρ)) [y_m − τp₁(0) − ρp₂(0)]^{1/2}`,
/// `p_out = (p₁(0) − τy_m)/ρ`.
pub fn map_cubic(cfg: &GateConfig, input: PhasePoint, p2_initial: f64) -> Result<BranchPair> {
    let radicand = cfg.y_m - cfg.tau * input.p - cfg.rho * p2_initial;
    if !(radicand >= 0.0) {
        return Err(outside(radicand));
    }
    let half = cfg.tau / (3.0 * cfg.gamma * cfg.rho).sqrt() * radicand.sqrt();
    let p = (input.p - cfg.tau * cfg.y_m) / cfg.rho;
    Ok(BranchPair::symmetric(cfg.rho * input.q, half, p))
}

/// `Δq = (τ/√(3γρ)) [y_m − τp₁(0)]^{1/2}`.
pub fn half_spacing(cfg: &GateConfig, p1_initial: f64) -> Result<f64> {
    let radicand = cfg.y_m - cfg.tau * p1_initial;
    if !(radicand >= 0.0) {
        return Err(outside(radicand));
    }
    Ok(cfg.tau / (3.0 * cfg.gamma * cfg.rho).sqrt() * radicand.sqrt())
}

/// Outcome that places the copies at `±Δq`: `y_m = 3γρΔq²/τ²`.
pub fn ym_for_half_spacing(rho: f64, tau: f64, gamma: f64, delta_q: f64) -> Result<f64> {
    if !(delta_q >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "half-spacing must be non-negative, got {delta_q}"
        )));
    }
    Ok(3.0 * gamma * rho * delta_q * delta_q / (tau * tau))
}

/// Coordinate squeezing of each output copy, `s′ = 1/ρ`.
pub fn copy_squeezing(rho: f64) -> f64 {
    1.0 / rho
}

/// `(∂q_out/∂p₁(0))` for the `(minus, plus)` branches.
pub fn shearing_slopes(cfg: &GateConfig, input: PhasePoint, p2_initial: f64) -> Result<(f64, f64)> {
    let radicand = cfg.y_m - cfg.tau * input.p - cfg.rho * p2_initial;
    if !(radicand > 0.0) {
        return Err(outside(radicand));
    }
    let k = cfg.tau * cfg.tau / (2.0 * (3.0 * cfg.gamma * cfg.rho * radicand).sqrt());
    Ok((k, -k))
}

/// Fock gate: `q_out = ρq₁(0) ∓ τ [2n+1 − (y_m − τp₁(0))²/ρ²]^{1/2}`,
/// `p_out = p₁(0)/ρ − τy_m/ρ`.
pub fn map_fock(cfg: &FockGateConfig, input: PhasePoint) -> Result<BranchPair> {
    let shift = (cfg.y_m - cfg.tau * input.p) / cfg.rho;
    let radicand = 2.0 * cfg.n as f64 + 1.0 - shift * shift;
    if !(radicand >= 0.0) {
        return Err(outside(radicand));
    }
    let half = cfg.tau * radicand.sqrt();
    let p = input.p / cfg.rho - cfg.tau * cfg.y_m / cfg.rho;
    Ok(BranchPair::symmetric(cfg.rho * input.q, half, p))
}

/// Gates with a two-valued semiclassical map.
pub trait SemiclassicalGate {
    /// Branches of the vacuum centre (origin input, `p₂(0) = 0`).
    fn origin_branches(&self) -> Result<BranchPair>;
    fn reflection(&self) -> f64;
}

impl SemiclassicalGate for GateConfig {
    fn origin_branches(&self) -> Result<BranchPair> {
        map_cubic(self, PhasePoint::ORIGIN, 0.0)
    }

    fn reflection(&self) -> f64 {
        self.rho
    }
}

impl SemiclassicalGate for FockGateConfig {
    fn origin_branches(&self) -> Result<BranchPair> {
        map_fock(self, PhasePoint::ORIGIN)
    }

    fn reflection(&self) -> f64 {
        self.rho
    }
}

/// Perfect cat predicted by the semiclassical map: `α′` is the half-spacing
/// of the origin's destinations, `α″` their common momentum, `s′ = 1/ρ`.
pub fn perfect_cat_from_semiclassics<G: SemiclassicalGate>(
    gate: &G,
    theta: f64,
) -> Result<PerfectCatSpec> {
    let branches = gate.origin_branches()?;
    PerfectCatSpec::new(
        branches.half_spacing(),
        branches.plus.p,
        copy_squeezing(gate.reflection()),
        theta,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn t() -> f64 {
        3f64.sqrt() / 2.0
    }

    #[test]
    fn headline_cubic_mapping() {
        let cfg = GateConfig::from_rho(0.5, 0.2, 0.115, 1.89).unwrap();
        let b = map_cubic(&cfg, PhasePoint::ORIGIN, 0.0).unwrap();
        assert!((b.plus.q - 2.87).abs() < 0.005);
        assert!((b.minus.q + 2.87).abs() < 0.005);
        assert!((b.plus.p - (-2.0 * t() * 1.89)).abs() < 1e-12);
        assert_eq!(b.plus.p, b.minus.p);
        assert_eq!(half_spacing(&cfg, 0.0).unwrap(), b.half_spacing());
    }

    #[test]
    fn zero_transmission_limit() {
        // τ → 0 cannot be built as a GateConfig; the formula is checked directly.
        let cfg = GateConfig {
            rho: 1.0,
            tau: 0.0,
            s: 0.2,
            gamma: 0.1,
            y_m: 2.0,
        };
        let input = PhasePoint::new(0.3, -0.7);
        let b = map_cubic(&cfg, input, 0.0).unwrap();
        assert_eq!(b.minus, input);
        assert_eq!(b.plus, input);
    }

    #[test]
    fn radicand_sign() {
        let cfg = GateConfig::from_rho(0.5, 0.2, 0.115, -0.1).unwrap();
        assert!(matches!(
            map_cubic(&cfg, PhasePoint::ORIGIN, 0.0),
            Err(Error::OutsideSupport { .. })
        ));
        assert!(half_spacing(&cfg, 0.0).is_err());
        let cfg = GateConfig::from_rho(0.5, 0.2, 0.115, 1.0).unwrap();
        assert_eq!(half_spacing(&cfg, 1.0 / t()).unwrap(), 0.0);
    }

    #[test]
    fn table_outcomes_from_spacing() {
        let y = ym_for_half_spacing(t(), 0.5, 0.106, 2.87).unwrap();
        assert!((y - 9.05).abs() < 0.05);
        let y = ym_for_half_spacing(FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.111, 2.87).unwrap();
        assert!((y - 3.87).abs() < 0.05);
        assert_eq!(ym_for_half_spacing(0.5, t(), 0.1, 0.0).unwrap(), 0.0);
        assert!(ym_for_half_spacing(0.5, t(), 0.1, -1.0).is_err());
        let cfg = GateConfig::from_rho(t(), 0.2, 0.106, 9.05).unwrap();
        assert!((half_spacing(&cfg, 0.0).unwrap() - 2.87).abs() < 0.005);
    }

    #[test]
    fn copy_squeezing_values() {
        assert_eq!(copy_squeezing(0.5), 2.0);
        assert!((copy_squeezing(FRAC_1_SQRT_2) - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(copy_squeezing(1.0), 1.0);
    }

    #[test]
    fn fock_mapping() {
        let cfg = FockGateConfig::from_rho(0.5, 5, 0.0).unwrap();
        let b = map_fock(&cfg, PhasePoint::ORIGIN).unwrap();
        assert_eq!(b.half_spacing(), t() * 11f64.sqrt());
        assert!((b.half_spacing() - 2.87).abs() < 0.005);
        assert_eq!(b.plus.p, 0.0);

        let cfg = FockGateConfig::from_rho(0.5, 0, 0.0).unwrap();
        let b = map_fock(&cfg, PhasePoint::ORIGIN).unwrap();
        assert!((b.plus.q - 0.866).abs() < 1e-3);

        let cfg = FockGateConfig::from_rho(0.5, 5, 0.5 * 11f64.sqrt() + 1e-9).unwrap();
        assert!(matches!(
            map_fock(&cfg, PhasePoint::ORIGIN),
            Err(Error::OutsideSupport { .. })
        ));
    }

    #[test]
    fn perfect_cats() {
        let cfg = GateConfig::from_rho(0.5, 0.2, 0.115, 1.89).unwrap();
        let cat = perfect_cat_from_semiclassics(&cfg, PI).unwrap();
        let direct = t() * 1.89f64.sqrt() / (3.0 * 0.115 * 0.5f64).sqrt();
        assert!((cat.alpha_prime - direct).abs() < 1e-12);
        assert!((cat.alpha_prime - 2.87).abs() < 0.005);
        assert!((cat.alpha_dprime + t() * 1.89 / 0.5).abs() < 1e-12);
        assert_eq!(cat.s_prime, 2.0);
        assert_eq!(cat.theta, PI);

        let fock = FockGateConfig::from_rho(0.5, 5, 0.0).unwrap();
        let cat = perfect_cat_from_semiclassics(&fock, PI).unwrap();
        assert!((cat.alpha_prime - 2.87).abs() < 0.005);
        assert_eq!(cat.alpha_dprime, 0.0);
        assert_eq!(cat.s_prime, 2.0);

        let cfg = GateConfig::from_rho(0.5, 0.2, 0.115, 0.0).unwrap();
        let cat = perfect_cat_from_semiclassics(&cfg, PI).unwrap();
        assert_eq!(cat.alpha_prime, 0.0);
        assert_eq!(cat.alpha_dprime, 0.0);
    }

    #[test]
    fn shearing_slopes_match_finite_differences() {
        let cfg = GateConfig::from_rho(0.5, 0.2, 0.2, 3.3).unwrap();
        let (m, p) = shearing_slopes(&cfg, PhasePoint::ORIGIN, 0.0).unwrap();
        let h = 1e-6;
        let up = map_cubic(&cfg, PhasePoint::new(0.0, h), 0.0).unwrap();
        let dn = map_cubic(&cfg, PhasePoint::new(0.0, -h), 0.0).unwrap();
        assert!(((up.minus.q - dn.minus.q) / (2.0 * h) - m).abs() < 1e-6);
        assert!(((up.plus.q - dn.plus.q) / (2.0 * h) - p).abs() < 1e-6);
        assert!(m > 0.0 && p < 0.0);
    }
}
