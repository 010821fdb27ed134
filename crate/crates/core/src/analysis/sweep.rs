use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fidelity::{cat_for_half_spacing, gate_fidelity};
use crate::error::{Error, Result};
use crate::gate::{prob_density, GateConfig};
use crate::semiclassical::{perfect_cat_from_semiclassics, ym_for_half_spacing};

/// Quantity tabulated by a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Metric {
    Fidelity,
    Infidelity,
    /// `P(y_m)` per unit `y_m`.
    ProbabilityDensity,
}

/// Metric values on a 1-D or 2-D parameter grid.
///
/// `values` is row-major with the first axis slowest; cells whose evaluation
/// failed hold `None`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub metric: Metric,
    pub axis_names: Vec<String>,
    pub axes: Vec<Vec<f64>>,
    pub values: Vec<Option<f64>>,
    pub template: GateConfig,
    /// Pinned half-spacing for fixed-`Δq` slices.
    pub delta_q: Option<f64>,
    /// Grid points used per fidelity evaluation.
    pub num_points: usize,
}

impl SweepResult {
    /// `(axis value, metric)` pairs of a 1-D sweep.
    pub fn series(&self) -> Vec<(f64, Option<f64>)> {
        self.axes[0].iter().copied().zip(self.values.iter().copied()).collect()
    }

    pub fn masked_cells(&self) -> usize {
        self.values.iter().filter(|v| v.is_none()).count()
    }
}

fn linspace(range: (f64, f64), n: usize) -> Result<Vec<f64>> {
    let (a, b) = range;
    if !(a.is_finite() && b.is_finite() && a < b) || n < 2 {
        return Err(Error::InvalidParameter(format!(
            "sweep needs a finite range with lower < upper and at least two points, got ({a}, {b}) × {n}"
        )));
    }
    Ok((0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect())
}

fn masked(label: &str, r: Result<f64>) -> Option<f64> {
    match r {
        Ok(v) if v.is_finite() => Some(v),
        Ok(v) => {
            log::debug!("{label}: non-finite value {v}");
            None
        }
        Err(e) => {
            log::debug!("{label}: {e}");
            None
        }
    }
}

/// Fidelity over `(γ, y_m)`; every cell is compared with the odd cat that
/// the semiclassical map predicts for that cell.
pub fn fidelity_map(
    template: &GateConfig,
    gamma_range: (f64, f64),
    ym_range: (f64, f64),
    resolution: (usize, usize),
    num_points: usize,
) -> Result<SweepResult> {
    let gammas = linspace(gamma_range, resolution.0)?;
    let yms = linspace(ym_range, resolution.1)?;
    if gamma_range.0 <= 0.0 || ym_range.0 < 0.0 {
        return Err(Error::InvalidParameter(
            "fidelity map needs γ > 0 and y_m ≥ 0".into(),
        ));
    }
    let cells: Vec<(f64, f64)> = gammas
        .iter()
        .flat_map(|&g| yms.iter().map(move |&y| (g, y)))
        .collect();
    let values = cells
        .par_iter()
        .map(|&(g, y)| {
            let r = template
                .with_gamma(g)
                .and_then(|c| c.with_ym(y))
                .and_then(|cfg| {
                    let cat = perfect_cat_from_semiclassics(&cfg, PI)?;
                    gate_fidelity(&cfg, &cat, num_points)
                });
            masked(&format!("γ={g}, y_m={y}"), r)
        })
        .collect();
    Ok(SweepResult {
        metric: Metric::Fidelity,
        axis_names: vec!["gamma".into(), "y_m".into()],
        axes: vec![gammas, yms],
        values,
        template: *template,
        delta_q: None,
        num_points,
    })
}

/// `1 − F` at one γ with `y_m` tied to γ so that the copies sit at `±Δq`;
/// the reference cat is pinned at `α′ = Δq`.
pub fn infidelity_at(
    template: &GateConfig,
    delta_q: f64,
    gamma: f64,
    num_points: usize,
) -> Result<f64> {
    let y_m = ym_for_half_spacing(template.rho, template.tau, gamma, delta_q)?;
    let cfg = template.with_gamma(gamma)?.with_ym(y_m)?;
    let cat = cat_for_half_spacing(&cfg, delta_q)?;
    Ok(1.0 - gate_fidelity(&cfg, &cat, num_points)?)
}

/// Infidelity versus γ along the fixed half-spacing line.
pub fn infidelity_slice(
    template: &GateConfig,
    delta_q: f64,
    gamma_range: (f64, f64),
    resolution: usize,
    num_points: usize,
) -> Result<SweepResult> {
    if gamma_range.0 <= 0.0 {
        return Err(Error::InvalidParameter("slice needs γ > 0".into()));
    }
    let gammas = linspace(gamma_range, resolution)?;
    let values = gammas
        .par_iter()
        .map(|&g| masked(&format!("γ={g}"), infidelity_at(template, delta_q, g, num_points)))
        .collect();
    Ok(SweepResult {
        metric: Metric::Infidelity,
        axis_names: vec!["gamma".into()],
        axes: vec![gammas],
        values,
        template: *template,
        delta_q: Some(delta_q),
        num_points,
    })
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section minimization of `f` on `[a, b]` down to a bracket of
/// width `tol`.
pub fn golden_section_min<F>(mut f: F, a: f64, b: f64, tol: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (mut a, mut b) = (a.min(b), a.max(b));
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d)?;
        }
    }
    Ok(if fc < fd { (c, fc) } else { (d, fd) })
}

/// Width to which γ minima are refined.
const GAMMA_TOL: f64 = 2e-5;

/// Interior local minima of a 1-D sweep, each refined with `objective` by
/// golden section on the three-point bracket around it.
pub fn find_optimal_gamma_with<F>(slice: &SweepResult, objective: F) -> Result<Vec<(f64, f64)>>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let series = slice.series();
    let brackets: Vec<(f64, f64, f64, f64)> = series
        .windows(3)
        .filter_map(|w| match (w[0].1, w[1].1, w[2].1) {
            (Some(l), Some(m), Some(r)) if m < l && m <= r => Some((w[0].0, w[1].0, w[2].0, m)),
            _ => None,
        })
        .collect();
    brackets
        .par_iter()
        .map(|&(lo, mid, hi, coarse)| {
            let (g, v) = golden_section_min(&objective, lo, hi, GAMMA_TOL)?;
            Ok(if v <= coarse { (g, v) } else { (mid, coarse) })
        })
        .collect()
}

/// Refined minima of an infidelity slice produced by [`infidelity_slice`].
/// Empty when the slice has no interior minimum.
pub fn find_optimal_gamma(slice: &SweepResult) -> Result<Vec<(f64, f64)>> {
    let delta_q = match (slice.metric, slice.delta_q) {
        (Metric::Infidelity, Some(dq)) => dq,
        _ => {
            return Err(Error::InvalidParameter(
                "optimal-γ search needs a fixed-Δq infidelity slice".into(),
            ))
        }
    };
    let template = slice.template;
    let n = slice.num_points;
    find_optimal_gamma_with(slice, |g| infidelity_at(&template, delta_q, g, n))
}

/// `−20 log₁₀ s`.
pub fn squeezing_db(s: f64) -> f64 {
    -20.0 * s.log10()
}

pub fn squeezing_from_db(db: f64) -> f64 {
    10f64.powf(-db / 20.0)
}

/// `P(y_m)` versus the initial squeezing `s` at the template's `(γ, y_m)`.
pub fn probability_curve(
    template: &GateConfig,
    s_range: (f64, f64),
    resolution: usize,
) -> Result<SweepResult> {
    if !(s_range.0 > 0.0 && s_range.1 <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "squeezing range must lie in (0, 1], got {s_range:?}"
        )));
    }
    let ss = linspace(s_range, resolution)?;
    let values = ss
        .par_iter()
        .map(|&s| masked(&format!("s={s}"), template.with_s(s).and_then(|c| prob_density(&c))))
        .collect();
    Ok(SweepResult {
        metric: Metric::ProbabilityDensity,
        axis_names: vec!["s".into()],
        axes: vec![ss],
        values,
        template: *template,
        delta_q: None,
        num_points: crate::gate::PROBABILITY_GRID_POINTS,
    })
}

/// Squeezing that maximizes `P(y_m)` at the template's `(γ, y_m)`: the
/// coarse maximum of a curve is refined by golden section.
pub fn probability_peak(
    template: &GateConfig,
    s_range: (f64, f64),
    resolution: usize,
) -> Result<(f64, f64)> {
    let curve = probability_curve(template, s_range, resolution)?;
    let series = curve.series();
    let (imax, _) = series
        .iter()
        .enumerate()
        .filter_map(|(i, (_, v))| v.map(|v| (i, v)))
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .ok_or_else(|| Error::ParameterRange("probability curve has no valid cells".into()))?;
    let lo = series[imax.saturating_sub(1)].0;
    let hi = series[(imax + 1).min(series.len() - 1)].0;
    let (s, neg) = golden_section_min(
        |s| Ok(-prob_density(&template.with_s(s)?)?),
        lo,
        hi,
        1e-6,
    )?;
    Ok((s, -neg))
}
