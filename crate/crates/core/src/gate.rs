//! The conditional-state pipeline.
//!
//! A vacuum signal (port 1) and a resource (port 2) are mixed on a
//! beamsplitter with scattering matrix `[[ρ, −τ], [τ, ρ]]`, after which the
//! momentum of port 2 is measured with outcome `y_m`. The unnormalized state
//! left in port 1 is
//!
//! ```text
//! ψ̃(x) = (2π)^{-1/2} ∫ dx₂ ψ₁(ρx + τx₂) ψ₂(−τx + ρx₂) e^{−i x₂ y_m}
//! ```
//!
//! and `P(y_m) = ∫ |ψ̃|² dx` is the outcome probability density. For the
//! cubic phase resource the x₂-integral has a closed form in terms of Ai;
//! both routes are provided and the quadrature route serves as the oracle for
//! the closed form.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{
    airy_ai_scaled, airy_zeta, hermite::MAX_DEGREE, hermite_function, integrate_complex,
    QuadratureSpec, ENVELOPE_EFOLDS,
};
use crate::semiclassical;
use crate::states::{cubic_phase_amplitude, CubicResourceParams, GridSpec, QuadratureGrid};

const UNITARITY_TOL: f64 = 1e-12;

fn check_beamsplitter(rho: f64, tau: f64) -> Result<()> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "reflection ρ must lie in (0, 1), got {rho}"
        )));
    }
    if !(tau > 0.0 && tau < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "transmission τ must lie in (0, 1), got {tau}"
        )));
    }
    let defect = rho * rho + tau * tau - 1.0;
    if defect.abs() > UNITARITY_TOL {
        return Err(Error::InvalidParameter(format!(
            "ρ² + τ² must equal 1 (off by {defect:e})"
        )));
    }
    Ok(())
}

/// Transmission matching a reflection coefficient, `τ = √(1 − ρ²)`.
pub fn transmission_for(rho: f64) -> f64 {
    (1.0 - rho * rho).sqrt()
}

/// Cubic-phase gate parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GateConfig {
    pub rho: f64,
    pub tau: f64,
    pub s: f64,
    pub gamma: f64,
    pub y_m: f64,
}

impl GateConfig {
    pub fn new(rho: f64, tau: f64, s: f64, gamma: f64, y_m: f64) -> Result<Self> {
        check_beamsplitter(rho, tau)?;
        CubicResourceParams::new(s, gamma)?;
        if !y_m.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "measurement outcome must be finite, got {y_m}"
            )));
        }
        Ok(Self {
            rho,
            tau,
            s,
            gamma,
            y_m,
        })
    }

    /// Builds a config with `τ = √(1 − ρ²)`.
    pub fn from_rho(rho: f64, s: f64, gamma: f64, y_m: f64) -> Result<Self> {
        Self::new(rho, transmission_for(rho), s, gamma, y_m)
    }

    pub fn with_ym(&self, y_m: f64) -> Result<Self> {
        Self::new(self.rho, self.tau, self.s, self.gamma, y_m)
    }

    pub fn with_gamma(&self, gamma: f64) -> Result<Self> {
        Self::new(self.rho, self.tau, self.s, gamma, self.y_m)
    }

    pub fn with_s(&self, s: f64) -> Result<Self> {
        Self::new(self.rho, self.tau, s, self.gamma, self.y_m)
    }

    pub fn resource(&self) -> CubicResourceParams {
        CubicResourceParams {
            s: self.s,
            gamma: self.gamma,
        }
    }

    /// `Φ = (τ²/ρ² + s²) / (6γ)`.
    pub fn phi(&self) -> f64 {
        (self.tau * self.tau / (self.rho * self.rho) + self.s * self.s) / (6.0 * self.gamma)
    }
}

/// Fock-resource gate parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FockGateConfig {
    pub rho: f64,
    pub tau: f64,
    pub n: usize,
    pub y_m: f64,
}

impl FockGateConfig {
    pub fn new(rho: f64, tau: f64, n: usize, y_m: f64) -> Result<Self> {
        check_beamsplitter(rho, tau)?;
        if n > MAX_DEGREE {
            return Err(Error::InvalidParameter(format!(
                "Fock number {n} exceeds {MAX_DEGREE}"
            )));
        }
        if !y_m.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "measurement outcome must be finite, got {y_m}"
            )));
        }
        Ok(Self { rho, tau, n, y_m })
    }

    pub fn from_rho(rho: f64, n: usize, y_m: f64) -> Result<Self> {
        Self::new(rho, transmission_for(rho), n, y_m)
    }
}

/// Coefficients of the cubic exponent `i(a x₂³ + b(x) x₂² + c(x) x₂)` and the
/// x₂-independent exponent `d(x)` of the reduced-state integrand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormCoefficients {
    pub a: f64,
    pub b_at_x: Complex64,
    pub c_at_x: Complex64,
    pub d_at_x: Complex64,
    pub phi: f64,
}

impl ClosedFormCoefficients {
    pub fn at(cfg: &GateConfig, x: f64) -> Self {
        let GateConfig {
            rho,
            tau,
            s,
            gamma,
            y_m,
        } = *cfg;
        let s2 = s * s;
        let a = rho.powi(3) * gamma;
        let b = Complex64::new(
            -3.0 * rho * rho * tau * gamma * x,
            0.5 * (rho * rho * s2 + tau * tau),
        );
        let c = Complex64::new(
            -y_m + 3.0 * rho * tau * tau * gamma * x * x,
            rho * tau * x * (1.0 - s2),
        );
        let d = Complex64::new(
            -0.5 * (rho * rho + tau * tau * s2) * x * x,
            -tau.powi(3) * gamma * x.powi(3),
        );
        Self {
            a,
            b_at_x: b,
            c_at_x: c,
            d_at_x: d,
            phi: cfg.phi(),
        }
    }

    /// `∫ exp[i(a t³ + b t² + c t)] dt` through the Airy identity
    /// `2π/(3a)^{1/3} · exp[−i b/(3a) (c − 2b²/(9a))] · Ai[(c − b²/(3a)) / (3a)^{1/3}]`.
    pub fn cubic_integral(&self) -> Complex64 {
        let (a, b, c) = (self.a, self.b_at_x, self.c_at_x);
        let k = (3.0 * a).cbrt();
        let w = (c - b * b / (3.0 * a)) / k;
        let expo = Complex64::new(0.0, -1.0) * b / (3.0 * a) * (c - b * b * 2.0 / (9.0 * a));
        (expo - airy_zeta(w)).exp() * airy_ai_scaled(w) * (2.0 * PI / k)
    }

    /// Unnormalized reduced amplitude `√(s/2π²) e^{d(x)} ∫ e^{i(a t³ + b t² + c t)} dt`.
    pub fn reduced_amplitude(&self, s: f64) -> Complex64 {
        let (a, b, c) = (self.a, self.b_at_x, self.c_at_x);
        let k = (3.0 * a).cbrt();
        let w = (c - b * b / (3.0 * a)) / k;
        let expo = Complex64::new(0.0, -1.0) * b / (3.0 * a) * (c - b * b * 2.0 / (9.0 * a));
        (self.d_at_x + expo - airy_zeta(w)).exp()
            * airy_ai_scaled(w)
            * ((s / (2.0 * PI * PI)).sqrt() * 2.0 * PI / k)
    }
}

/// Normalized output state and the outcome probability density.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalState {
    pub wavefunction: QuadratureGrid,
    /// `P(y_m)` per unit `y_m`.
    pub prob_density: f64,
}

impl ConditionalState {
    fn from_unnormalized(mut wavefunction: QuadratureGrid) -> Result<Self> {
        let prob_density = wavefunction.normalize()?;
        Ok(Self {
            wavefunction,
            prob_density,
        })
    }
}

/// Resource states for the quadrature route.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Resource {
    Cubic(CubicResourceParams),
    /// Squeezed vacuum with factor `s` (the `γ = 0` cubic state).
    SqueezedVacuum(f64),
    Fock(usize),
}

impl Resource {
    fn amplitude(&self, x: f64) -> Complex64 {
        match *self {
            Resource::Cubic(p) => cubic_phase_amplitude(&p, x),
            Resource::SqueezedVacuum(s) => cubic_phase_amplitude(
                &CubicResourceParams { s, gamma: 0.0 },
                x,
            ),
            Resource::Fock(n) => {
                Complex64::new(hermite_function(n, x).expect("validated Fock number"), 0.0)
            }
        }
    }

    /// Precision `q` of the resource's Gaussian envelope `e^{−q x²/2}`.
    fn envelope_precision(&self) -> f64 {
        match *self {
            Resource::Cubic(p) => p.s * p.s,
            Resource::SqueezedVacuum(s) => s * s,
            Resource::Fock(_) => 1.0,
        }
    }

    fn extra_width(&self) -> f64 {
        match *self {
            Resource::Fock(n) => (2.0 * n as f64 + 1.0).sqrt() + 2.0,
            _ => 0.0,
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Resource::Cubic(p) => CubicResourceParams::new(p.s, p.gamma).map(|_| ()),
            Resource::SqueezedVacuum(s) if s > 0.0 && s.is_finite() => Ok(()),
            Resource::SqueezedVacuum(s) => Err(Error::InvalidParameter(format!(
                "squeezing must be positive, got {s}"
            ))),
            Resource::Fock(n) if n <= MAX_DEGREE => Ok(()),
            Resource::Fock(n) => Err(Error::InvalidParameter(format!(
                "Fock number {n} exceeds {MAX_DEGREE}"
            ))),
        }
    }
}

/// Default quadrature tolerances for the reduced-state integral.
pub fn default_quadrature(lower: f64, upper: f64) -> QuadratureSpec {
    QuadratureSpec::new(lower, upper)
        .with_tolerances(1e-14, 1e-12)
        .with_max_subdivisions(4000)
        .with_initial_panels(16)
}

/// `ψ̃(x)` at one point by direct quadrature over x₂.
///
/// The product of the two Gaussian envelopes is a Gaussian in x₂ with
/// precision `A = τ² + qρ²` centred at `ρτx(q − 1)/A`; the integral is
/// truncated where it falls below 1e-16 of its peak.
pub fn reduced_amplitude_integral(
    rho: f64,
    tau: f64,
    y_m: f64,
    resource: &Resource,
    x: f64,
) -> Result<Complex64> {
    let q = resource.envelope_precision();
    let precision = tau * tau + q * rho * rho;
    let center = rho * tau * x * (q - 1.0) / precision;
    let half = (2.0 * ENVELOPE_EFOLDS / precision).sqrt() + resource.extra_width() / rho;
    let k = PI.powf(-0.25) / (2.0 * PI).sqrt();
    let integrand = |x2: f64| {
        let u = rho * x + tau * x2;
        let signal = (-0.5 * u * u).exp();
        let anc = resource.amplitude(-tau * x + rho * x2);
        anc * Complex64::from_polar(k * signal, -x2 * y_m)
    };
    let spec = default_quadrature(center - half, center + half);
    Ok(integrate_complex(integrand, &spec)?.value)
}

/// Quadrature route for an arbitrary resource.
pub fn output_wf_integral_with_resource(
    rho: f64,
    tau: f64,
    y_m: f64,
    resource: &Resource,
    grid: GridSpec,
) -> Result<ConditionalState> {
    check_beamsplitter(rho, tau)?;
    resource.validate()?;
    let results: Vec<(f64, Result<Complex64>)> = (0..grid.num_points)
        .into_par_iter()
        .map(|i| {
            let x = grid.x(i);
            (x, reduced_amplitude_integral(rho, tau, y_m, resource, x))
        })
        .collect();
    let mut samples = Vec::with_capacity(results.len());
    let mut worst: Option<(f64, Error, f64)> = None;
    for (x, r) in results {
        match r {
            Ok(v) => samples.push(v),
            Err(e) => {
                let severity = match &e {
                    Error::NonConvergence { error_estimate, .. } => *error_estimate,
                    _ => f64::INFINITY,
                };
                if worst.as_ref().is_none_or(|w| severity > w.2) {
                    worst = Some((x, e, severity));
                }
                samples.push(Complex64::new(0.0, 0.0));
            }
        }
    }
    if let Some((x, e, _)) = worst {
        return Err(Error::GridQuadrature {
            x,
            source: Box::new(e),
        });
    }
    ConditionalState::from_unnormalized(QuadratureGrid::from_samples(grid, samples)?)
}

/// Output state of the cubic-phase gate by direct quadrature of the
/// reduced-state integral.
pub fn output_wf_integral(cfg: &GateConfig, grid: GridSpec) -> Result<ConditionalState> {
    output_wf_integral_with_resource(
        cfg.rho,
        cfg.tau,
        cfg.y_m,
        &Resource::Cubic(cfg.resource()),
        grid,
    )
}

/// Output state of the Fock-resource gate.
pub fn fock_output_wf(cfg: &FockGateConfig, grid: GridSpec) -> Result<ConditionalState> {
    output_wf_integral_with_resource(cfg.rho, cfg.tau, cfg.y_m, &Resource::Fock(cfg.n), grid)
}

/// Unnormalized closed-form amplitude
/// `√(2s)/(ρ(3γ)^{1/3}) · exp[−x²/(2ρ²) + 2γΦ³ − Φy_m/ρ] ·
///  exp[iτ(Φ/ρ − y_m)x/ρ] · Ai[(iτx/ρ + 3ργΦ² − y_m)/(ρ(3γ)^{1/3})]`.
///
/// The exponential growth of Ai is folded into the real exponent, so no
/// intermediate overflows for moderate parameters.
pub fn reduced_amplitude_closed(cfg: &GateConfig, x: f64) -> Complex64 {
    let GateConfig {
        rho,
        tau,
        s,
        gamma,
        y_m,
    } = *cfg;
    let phi = cfg.phi();
    let k = rho * (3.0 * gamma).cbrt();
    let w = Complex64::new(3.0 * rho * gamma * phi * phi - y_m, tau * x / rho) / k;
    let real = -x * x / (2.0 * rho * rho) + 2.0 * gamma * phi.powi(3) - phi * y_m / rho;
    let phase = tau / rho * (phi / rho - y_m) * x;
    let expo = Complex64::new(real, phase) - airy_zeta(w);
    expo.exp() * airy_ai_scaled(w) * ((2.0 * s).sqrt() / k)
}

/// Unnormalized closed-form output sampled on `grid`.
pub fn unnormalized_closed(cfg: &GateConfig, grid: GridSpec) -> Result<QuadratureGrid> {
    let samples: Vec<Complex64> = (0..grid.num_points)
        .into_par_iter()
        .map(|i| reduced_amplitude_closed(cfg, grid.x(i)))
        .collect();
    if let Some(i) = samples
        .iter()
        .position(|c| !(c.re.is_finite() && c.im.is_finite()))
    {
        return Err(Error::ParameterRange(format!(
            "closed-form amplitude not representable at x = {} for {cfg:?}",
            grid.x(i)
        )));
    }
    QuadratureGrid::from_samples(grid, samples)
}

/// Output state of the cubic-phase gate from the closed-form expression.
pub fn output_wf_closed(cfg: &GateConfig, grid: GridSpec) -> Result<ConditionalState> {
    ConditionalState::from_unnormalized(unnormalized_closed(cfg, grid)?)
}

/// Default output grid: the perfect-cat grid when the semiclassical branches
/// exist, otherwise `[-8, 8]`.
pub fn default_output_grid(cfg: &GateConfig, num_points: usize) -> Result<GridSpec> {
    match semiclassical::perfect_cat_from_semiclassics(cfg, std::f64::consts::PI) {
        Ok(cat) => GridSpec::for_cat(&cat, num_points),
        Err(_) => GridSpec::symmetric(8.0, num_points),
    }
}

/// Grid on which `|ψ̃|²` is integrated for `P(y_m)`. Only the modulus
/// matters, which is smooth, so a coarser grid suffices.
pub fn probability_grid(cfg: &GateConfig, num_points: usize) -> Result<GridSpec> {
    let spacing = cfg.tau * (cfg.y_m.max(0.0) / (3.0 * cfg.gamma * cfg.rho)).sqrt();
    GridSpec::symmetric(spacing + 8.0, num_points)
}

/// Points used for the `P(y_m)` integral over x.
pub const PROBABILITY_GRID_POINTS: usize = 1024;

/// `P(y_m)` from the closed form.
pub fn prob_density(cfg: &GateConfig) -> Result<f64> {
    let grid = probability_grid(cfg, PROBABILITY_GRID_POINTS)?;
    Ok(unnormalized_closed(cfg, grid)?.norm_sq())
}

/// Tabulated `P(y_m)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityTable {
    pub samples: Vec<(f64, f64)>,
    /// Trapezoidal `∫ P dy_m` over the table.
    pub integral: f64,
    /// Set when the table captures less than 0.999 of the total probability.
    pub diagnostic: Option<String>,
}

/// Range of `y_m` outside which `P(y_m)` is negligible:
/// `y_m = τp₁ + ρ(p₂ + 3γq₂²)` with each quadrature cut where its Gaussian
/// weight falls to 1e-16.
pub fn default_y_range(cfg: &GateConfig) -> (f64, f64) {
    let cut = (2.0 * ENVELOPE_EFOLDS).sqrt() / 2f64.sqrt();
    let momentum = cut * (cfg.tau + cfg.rho * cfg.s) + 1.0;
    let q2_sq = ENVELOPE_EFOLDS / (cfg.s * cfg.s);
    (-momentum, 3.0 * cfg.gamma * cfg.rho * q2_sq + momentum)
}

/// Tabulates `P(y_m)` on `num` equally spaced outcomes in `y_range`; the
/// `y_m` of `cfg` is ignored.
pub fn success_probability(
    cfg: &GateConfig,
    y_range: (f64, f64),
    num: usize,
) -> Result<ProbabilityTable> {
    let (y0, y1) = y_range;
    if !(y0 < y1) || num < 2 {
        return Err(Error::InvalidParameter(format!(
            "need y_min < y_max and at least two samples, got ({y0}, {y1}) and {num}"
        )));
    }
    let dy = (y1 - y0) / (num - 1) as f64;
    let samples = (0..num)
        .into_par_iter()
        .map(|i| {
            let y = y0 + dy * i as f64;
            prob_density(&cfg.with_ym(y)?).map(|p| (y, p))
        })
        .collect::<Result<Vec<_>>>()?;
    let integral = trapezoid(samples.iter().map(|s| s.1), dy);
    let diagnostic = if integral < 0.999 {
        let msg = format!(
            "P(y_m) over [{y0}, {y1}] integrates to {integral:.6}; range misses probability"
        );
        log::warn!("{msg}");
        Some(msg)
    } else {
        None
    };
    Ok(ProbabilityTable {
        samples,
        integral,
        diagnostic,
    })
}

pub(crate) fn trapezoid<I: IntoIterator<Item = f64>>(values: I, h: f64) -> f64 {
    let v: Vec<f64> = values.into_iter().collect();
    if v.len() < 2 {
        return 0.0;
    }
    let inner: f64 = v[1..v.len() - 1].iter().sum();
    h * (inner + 0.5 * (v[0] + v[v.len() - 1]))
}
