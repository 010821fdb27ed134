//! Input and reference wavefunctions sampled on uniform coordinate grids.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{hermite::MAX_DEGREE, hermite_function, ENVELOPE_EFOLDS};

/// Default number of grid points.
pub const DEFAULT_POINTS: usize = 4096;

/// Uniform sampling `x_i = x_min + i·dx`, `dx = (x_max − x_min)/(num_points − 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub num_points: usize,
}

impl GridSpec {
    pub fn new(x_min: f64, x_max: f64, num_points: usize) -> Result<Self> {
        if num_points < 2 {
            return Err(Error::InvalidParameter(format!(
                "grid needs at least 2 points, got {num_points}"
            )));
        }
        if !(x_min.is_finite() && x_max.is_finite() && x_min < x_max) {
            return Err(Error::InvalidParameter(format!(
                "grid bounds must satisfy x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        Ok(Self {
            x_min,
            x_max,
            num_points,
        })
    }

    /// `[-half_width, half_width]`.
    pub fn symmetric(half_width: f64, num_points: usize) -> Result<Self> {
        Self::new(-half_width, half_width, num_points)
    }

    /// Grid wide enough for a perfect cat and for the gate output that
    /// approximates it: `L = max(8, |α′| + |α″| + 8/min(1, s′))`.
    pub fn for_cat(spec: &PerfectCatSpec, num_points: usize) -> Result<Self> {
        let half = (spec.alpha_prime.abs() + spec.alpha_dprime.abs() + 8.0 / spec.s_prime.min(1.0))
            .max(8.0);
        Self::symmetric(half, num_points)
    }

    /// Grid on which the squeezed resource envelope `e^{-s²x²/2}` falls below
    /// 1e-16 of its peak at the edges.
    pub fn for_cubic_resource(params: &CubicResourceParams, num_points: usize) -> Result<Self> {
        let half = (2.0 * ENVELOPE_EFOLDS).sqrt() / params.s * 1.01;
        Self::symmetric(half, num_points)
    }

    /// Grid covering the classical turning points `±√(2n+1)` of the n-photon
    /// state with padding.
    pub fn for_fock(n: usize, num_points: usize) -> Result<Self> {
        let half = (2.0 * n as f64 + 1.0).sqrt() + 8.0;
        Self::symmetric(half, num_points)
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.num_points - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_min + (self.x_max - self.x_min) * (i as f64 / (self.num_points - 1) as f64)
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.num_points).map(move |i| self.x(i))
    }

    pub fn same_as(&self, other: &GridSpec) -> bool {
        self.num_points == other.num_points
            && (self.x_min - other.x_min).abs() <= 1e-12 * self.x_min.abs().max(1.0)
            && (self.x_max - other.x_max).abs() <= 1e-12 * self.x_max.abs().max(1.0)
    }
}

/// A complex wavefunction sampled on a [`GridSpec`].
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid {
    spec: GridSpec,
    samples: Vec<Complex64>,
    normalized: bool,
}

impl QuadratureGrid {
    pub fn from_samples(spec: GridSpec, samples: Vec<Complex64>) -> Result<Self> {
        if samples.len() != spec.num_points {
            return Err(Error::GridMismatch(format!(
                "{} samples for a {}-point grid",
                samples.len(),
                spec.num_points
            )));
        }
        Ok(Self {
            spec,
            samples,
            normalized: false,
        })
    }

    pub fn from_fn<F: Fn(f64) -> Complex64>(spec: GridSpec, f: F) -> Self {
        let samples = spec.points().map(f).collect();
        Self {
            spec,
            samples,
            normalized: false,
        }
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<Complex64> {
        self.samples
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// `Σ |ψ_i|² dx`.
    pub fn norm_sq(&self) -> f64 {
        self.samples.iter().map(|c| c.norm_sqr()).sum::<f64>() * self.spec.dx()
    }

    /// Scales to unit norm and returns the previous norm squared.
    pub fn normalize(&mut self) -> Result<f64> {
        let n2 = self.norm_sq();
        if !(n2 > 0.0 && n2.is_finite()) {
            return Err(Error::ParameterRange(format!(
                "cannot normalize a wavefunction with norm² = {n2}"
            )));
        }
        let k = n2.sqrt().recip();
        for c in &mut self.samples {
            *c *= k;
        }
        self.normalized = true;
        Ok(n2)
    }

    pub fn normalized(mut self) -> Result<Self> {
        self.normalize()?;
        Ok(self)
    }

    /// `⟨self|other⟩ = Σ conj(ψ_a) ψ_b dx`.
    pub fn inner(&self, other: &QuadratureGrid) -> Result<Complex64> {
        if !self.spec.same_as(&other.spec) {
            return Err(Error::GridMismatch(format!(
                "{:?} vs {:?}",
                self.spec, other.spec
            )));
        }
        let sum: Complex64 = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| a.conj() * b)
            .sum();
        Ok(sum * self.spec.dx())
    }

    /// Applies a global phase `e^{iφ}`.
    pub fn with_global_phase(mut self, phi: f64) -> Self {
        let p = Complex64::from_polar(1.0, phi);
        for c in &mut self.samples {
            *c *= p;
        }
        self
    }
}

/// Parameters of the squeezed cubic phase resource.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CubicResourceParams {
    /// Initial squeezing factor, `0 < s ≤ 1`.
    pub s: f64,
    /// Cubic nonlinearity `γ = γ₀t`.
    pub gamma: f64,
}

impl CubicResourceParams {
    pub fn new(s: f64, gamma: f64) -> Result<Self> {
        if !(s > 0.0 && s <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "squeezing s must lie in (0, 1], got {s}"
            )));
        }
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "cubic nonlinearity must be positive, got {gamma}"
            )));
        }
        Ok(Self { s, gamma })
    }
}

/// Perfect squeezed cat: two squeezed Gaussians at `±α′` with common
/// momentum `α″` and relative phase `θ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerfectCatSpec {
    pub alpha_prime: f64,
    pub alpha_dprime: f64,
    pub s_prime: f64,
    pub theta: f64,
    /// Normalization factor `N_c`. Filled with the continuum value by
    /// [`PerfectCatSpec::new`]; [`perfect_cat_wf`] normalizes numerically.
    pub norm: f64,
}

impl PerfectCatSpec {
    pub fn new(alpha_prime: f64, alpha_dprime: f64, s_prime: f64, theta: f64) -> Result<Self> {
        if !(s_prime > 0.0 && s_prime.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "copy squeezing s' must be positive, got {s_prime}"
            )));
        }
        if !(alpha_prime.is_finite() && alpha_dprime.is_finite() && theta.is_finite()) {
            return Err(Error::InvalidParameter("non-finite cat parameter".into()));
        }
        let mut spec = Self {
            alpha_prime,
            alpha_dprime,
            s_prime,
            theta,
            norm: 0.0,
        };
        spec.norm = spec.continuum_norm();
        Ok(spec)
    }

    /// Odd cat, `θ = π`.
    pub fn odd(alpha_prime: f64, alpha_dprime: f64, s_prime: f64) -> Result<Self> {
        Self::new(alpha_prime, alpha_dprime, s_prime, PI)
    }

    /// `N_c = [2 (√π/s′) (1 + cos θ · e^{−s′²α′²})]^{−1/2}`, the factor that
    /// normalizes the two-Gaussian sum on the whole line.
    pub fn continuum_norm(&self) -> f64 {
        let overlap = (-(self.s_prime * self.alpha_prime).powi(2)).exp();
        let n2 = 2.0 * PI.sqrt() / self.s_prime * (1.0 + self.theta.cos() * overlap);
        if n2 > 0.0 {
            n2.sqrt().recip()
        } else {
            f64::INFINITY
        }
    }

    fn unnormalized(&self, x: f64) -> Complex64 {
        let s2 = self.s_prime * self.s_prime;
        let plus = Complex64::new(
            -0.5 * s2 * (x - self.alpha_prime).powi(2),
            0.5 * self.theta + self.alpha_dprime * x,
        );
        let minus = Complex64::new(
            -0.5 * s2 * (x + self.alpha_prime).powi(2),
            -0.5 * self.theta + self.alpha_dprime * x,
        );
        plus.exp() + minus.exp()
    }
}

/// Vacuum `π^{-1/4} e^{-x²/2}`.
pub fn vacuum_wf(grid: GridSpec) -> QuadratureGrid {
    let k = PI.powf(-0.25);
    let mut g = QuadratureGrid::from_fn(grid, |x| Complex64::new(k * (-0.5 * x * x).exp(), 0.0));
    g.normalized = true;
    g
}

/// Squeezed vacuum `(s^{1/2}/π^{1/4}) e^{-s²x²/2}`.
pub fn squeezed_vacuum_wf(s: f64, grid: GridSpec) -> QuadratureGrid {
    let k = s.sqrt() * PI.powf(-0.25);
    let mut g =
        QuadratureGrid::from_fn(grid, |x| Complex64::new(k * (-0.5 * s * s * x * x).exp(), 0.0));
    g.normalized = true;
    g
}

/// Squeezed cubic phase state `(s^{1/2}/π^{1/4}) e^{-s²x²/2} e^{iγx³}`.
pub fn cubic_phase_wf(params: &CubicResourceParams, grid: GridSpec) -> QuadratureGrid {
    let mut g = QuadratureGrid::from_fn(grid, |x| cubic_phase_amplitude(params, x));
    g.normalized = true;
    g
}

pub(crate) fn cubic_phase_amplitude(params: &CubicResourceParams, x: f64) -> Complex64 {
    let s = params.s;
    let modulus = s.sqrt() * PI.powf(-0.25) * (-0.5 * s * s * x * x).exp();
    Complex64::from_polar(modulus, params.gamma * x * x * x)
}

/// n-photon Fock state `(π^{1/4}√(2ⁿn!))^{-1} H_n(x) e^{-x²/2}`.
pub fn fock_wf(n: usize, grid: GridSpec) -> Result<QuadratureGrid> {
    if n > MAX_DEGREE {
        return Err(Error::InvalidParameter(format!(
            "Fock number {n} exceeds {MAX_DEGREE}"
        )));
    }
    let samples = grid
        .points()
        .map(|x| hermite_function(n, x).map(|v| Complex64::new(v, 0.0)))
        .collect::<Result<Vec<_>>>()?;
    let mut g = QuadratureGrid::from_samples(grid, samples)?;
    g.normalized = true;
    Ok(g)
}

/// Perfect cat on `grid`, normalized numerically.
pub fn perfect_cat_wf(spec: &PerfectCatSpec, grid: GridSpec) -> Result<QuadratureGrid> {
    Ok(perfect_cat_wf_with_norm(spec, grid)?.0)
}

/// Perfect cat and the numerically determined `N_c`.
pub fn perfect_cat_wf_with_norm(
    spec: &PerfectCatSpec,
    grid: GridSpec,
) -> Result<(QuadratureGrid, f64)> {
    let mut g = QuadratureGrid::from_fn(grid, |x| spec.unnormalized(x));
    let n2 = g.normalize()?;
    Ok((g, n2.sqrt().recip()))
}
