use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::states::QuadratureGrid;

/// `W(x, p)` on a rectangular phase-space grid, stored row-major with `x`
/// as the slow index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WignerGrid {
    pub x_axis: Vec<f64>,
    pub p_axis: Vec<f64>,
    pub values: Vec<f64>,
}

impl WignerGrid {
    pub fn at(&self, ix: usize, ip: usize) -> f64 {
        self.values[ix * self.p_axis.len() + ip]
    }

    fn cell(&self) -> f64 {
        step(&self.x_axis) * step(&self.p_axis)
    }

    /// `∬ W dx dp`.
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.cell()
    }

    /// `2π ∬ W² dx dp`, equal to 1 for a pure state.
    pub fn purity(&self) -> f64 {
        2.0 * PI * self.values.iter().map(|w| w * w).sum::<f64>() * self.cell()
    }

    /// `∫ W dp` at every x.
    pub fn x_marginal(&self) -> Vec<f64> {
        let dp = step(&self.p_axis);
        self.values
            .chunks(self.p_axis.len())
            .map(|row| row.iter().sum::<f64>() * dp)
            .collect()
    }

    /// `∫ W dx` at every p.
    pub fn p_marginal(&self) -> Vec<f64> {
        let dx = step(&self.x_axis);
        let np = self.p_axis.len();
        (0..np)
            .map(|j| (0..self.x_axis.len()).map(|i| self.values[i * np + j]).sum::<f64>() * dx)
            .collect()
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

fn step(axis: &[f64]) -> f64 {
    if axis.len() < 2 {
        1.0
    } else {
        axis[1] - axis[0]
    }
}

/// `W(x, p) = (1/π) ∫ ψ*(x+y) ψ(x−y) e^{2ipy} dy` by direct summation over
/// the grid lags `y = k·dx`.
///
/// The x axis takes every `x_stride`-th grid point; the p axis has `num_p`
/// points on `[−p_max, p_max]`. The p spacing should stay below `π/(2L)`
/// for a state supported on `[−L, L]`, otherwise the lag sum aliases.
pub fn wigner(
    psi: &QuadratureGrid,
    p_max: f64,
    num_p: usize,
    x_stride: usize,
) -> Result<WignerGrid> {
    if !(p_max > 0.0 && p_max.is_finite()) || num_p < 2 || x_stride == 0 {
        return Err(Error::InvalidParameter(format!(
            "Wigner grid needs p_max > 0, num_p ≥ 2 and x_stride ≥ 1, got {p_max}, {num_p}, {x_stride}"
        )));
    }
    let spec = *psi.spec();
    let s = psi.samples();
    let n = s.len();
    let dx = spec.dx();
    let p_axis: Vec<f64> = (0..num_p)
        .map(|j| -p_max + 2.0 * p_max * j as f64 / (num_p - 1) as f64)
        .collect();
    let rows: Vec<usize> = (0..n).step_by(x_stride).collect();
    let x_axis: Vec<f64> = rows.iter().map(|&i| spec.x(i)).collect();
    let values: Vec<f64> = rows
        .par_iter()
        .flat_map_iter(|&i| {
            let kmax = i.min(n - 1 - i);
            let corr: Vec<Complex64> = (1..=kmax).map(|k| s[i + k].conj() * s[i - k]).collect();
            let centre = s[i].norm_sqr();
            let p_axis = &p_axis;
            p_axis.iter().map(move |&p| {
                // k and −k pair into 2 Re[c_k e^{2ipk dx}].
                let rot = Complex64::from_polar(1.0, 2.0 * p * dx);
                let mut phase = rot;
                let mut acc = 0.0;
                for c in &corr {
                    acc += (c * phase).re;
                    phase *= rot;
                }
                (centre + 2.0 * acc) * dx / PI
            })
        })
        .collect();
    Ok(WignerGrid {
        x_axis,
        p_axis,
        values,
    })
}
