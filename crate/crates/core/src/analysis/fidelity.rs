use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gate::{fock_output_wf, output_wf_closed, FockGateConfig, GateConfig};
use crate::semiclassical::copy_squeezing;
use crate::states::{perfect_cat_wf, GridSpec, PerfectCatSpec, QuadratureGrid};

/// `F = |⟨a|b⟩|²`, with both states normalized on the grid first.
pub fn fidelity(psi_a: &QuadratureGrid, psi_b: &QuadratureGrid) -> Result<f64> {
    let overlap = psi_a.inner(psi_b)?;
    let f = overlap.norm_sqr() / (psi_a.norm_sq() * psi_b.norm_sq());
    Ok(f.clamp(0.0, 1.0))
}

/// Odd cat with copies pinned at `±delta_q`, momentum `−τy_m/ρ` and copy
/// squeezing `1/ρ`.
pub fn cat_for_half_spacing(cfg: &GateConfig, delta_q: f64) -> Result<PerfectCatSpec> {
    PerfectCatSpec::odd(
        delta_q,
        -cfg.tau * cfg.y_m / cfg.rho,
        copy_squeezing(cfg.rho),
    )
}

/// Fidelity of the closed-form gate output to `cat`, on the cat's default grid.
pub fn gate_fidelity(cfg: &GateConfig, cat: &PerfectCatSpec, num_points: usize) -> Result<f64> {
    let grid = GridSpec::for_cat(cat, num_points)?;
    let out = output_wf_closed(cfg, grid)?;
    fidelity(&out.wavefunction, &perfect_cat_wf(cat, grid)?)
}

/// Fidelity of the Fock-resource gate output to `cat`.
pub fn fock_fidelity(
    cfg: &FockGateConfig,
    cat: &PerfectCatSpec,
    num_points: usize,
) -> Result<f64> {
    let grid = GridSpec::for_cat(cat, num_points)?;
    let out = fock_output_wf(cfg, grid)?;
    fidelity(&out.wavefunction, &perfect_cat_wf(cat, grid)?)
}

/// `|φ(p)|²` with `φ(p) = (2π)^{-1/2} ∫ ψ(x) e^{−ipx} dx`.
pub fn momentum_density(psi: &QuadratureGrid, p_axis: &[f64]) -> Vec<f64> {
    let spec = psi.spec();
    let k = spec.dx() / (2.0 * PI).sqrt();
    p_axis
        .iter()
        .map(|&p| {
            let sum: Complex64 = psi
                .samples()
                .iter()
                .enumerate()
                .map(|(i, &c)| c * Complex64::from_polar(1.0, -p * spec.x(i)))
                .sum();
            (sum * k).norm_sqr()
        })
        .collect()
}

/// `⟨p⟩ = ∫ ψ*(−i∂ₓ)ψ dx / ∫|ψ|²`, with an eighth-order central difference.
pub fn momentum_mean(psi: &QuadratureGrid) -> Result<f64> {
    const STENCIL: [f64; 4] = [4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0];
    let s = psi.samples();
    if s.len() < 9 {
        return Err(Error::InvalidParameter(
            "momentum mean needs at least nine samples".into(),
        ));
    }
    let mut acc = 0.0;
    for i in 4..s.len() - 4 {
        let d: Complex64 = STENCIL
            .iter()
            .enumerate()
            .map(|(k, &c)| (s[i + k + 1] - s[i - k - 1]) * c)
            .sum();
        acc += (s[i].conj() * d).im;
    }
    Ok(acc / psi.norm_sq())
}
