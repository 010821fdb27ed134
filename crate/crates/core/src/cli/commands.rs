use std::path::PathBuf;
use std::time::{Instant, SystemTime};

use serde_json::json;

use super::output::{num, opt, sibling, CsvTable, RunManifest};
use super::{CliError, CommandKind, Params};
use crate::analysis::{
    benchmark_table, cat_for_half_spacing, fidelity, fidelity_map, find_optimal_gamma,
    gate_fidelity, infidelity_slice, probability_curve, probability_peak, squeezing_db, wigner,
    WignerGrid,
};
use crate::gate::{default_output_grid, fock_output_wf, output_wf_closed, FockGateConfig, GateConfig};
use crate::semiclassical::{half_spacing, map_fock, ym_for_half_spacing, PhasePoint};
use crate::states::{perfect_cat_wf, GridSpec, PerfectCatSpec, QuadratureGrid};

const BENCHMARK_TOLERANCE: f64 = 0.002;
const DEFAULT_PROBABILITY_GAMMAS: [f64; 3] = [0.115, 0.202, 0.289];
const DEFAULT_WIGNER_GAMMA: f64 = 0.289;
const WIGNER_X_SAMPLES: usize = 256;

struct Outcome {
    outputs: Vec<PathBuf>,
    summary: serde_json::Value,
    failure: Option<CliError>,
}

pub(super) fn execute(kind: CommandKind, p: &Params) -> Result<(), CliError> {
    let started = SystemTime::now();
    let clock = Instant::now();
    let outcome = match kind {
        CommandKind::Table1 => table1(p)?,
        CommandKind::FidelityMap => fidelity_map_cmd(p)?,
        CommandKind::InfidelitySlice => infidelity_slice_cmd(p)?,
        CommandKind::ProbCurve => prob_curve(p)?,
        CommandKind::Wigner => wigner_cmd(p)?,
        CommandKind::FockCompare => fock_compare(p)?,
    };
    let manifest = RunManifest::new(
        kind.name(),
        p,
        outcome.outputs,
        started,
        clock.elapsed(),
        outcome.summary,
    );
    manifest.write(&p.out)?;
    match outcome.failure {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

fn template(p: &Params, gamma: f64, y_m: f64) -> Result<GateConfig, CliError> {
    GateConfig::new(p.rho, p.tau, p.s, gamma, y_m).map_err(|e| CliError::Usage(e.to_string()))
}

fn outcome_for(p: &Params, gamma: f64) -> Result<f64, CliError> {
    match p.ym {
        Some(y) => Ok(y),
        None => Ok(ym_for_half_spacing(p.rho, p.tau, gamma, p.delta_q)?),
    }
}

fn table1(p: &Params) -> Result<Outcome, CliError> {
    let rows = benchmark_table(p.grid_points)?;
    let mut csv = CsvTable::new(vec![
        "rho",
        "tau",
        "gamma_listed",
        "gamma",
        "y_m_listed",
        "y_m",
        "fidelity_listed",
        "fidelity",
        "fidelity_at_listed_gamma",
        "fidelity_deviation",
    ]);
    println!(
        "{:>7} {:>7} {:>8} {:>9} {:>8} {:>8} {:>8} {:>8}",
        "rho", "tau", "gamma", "gamma*", "y_m", "y_m*", "F", "F*"
    );
    let mut worst = 0.0f64;
    for r in &rows {
        worst = worst.max(r.fidelity_error());
        println!(
            "{:>7.4} {:>7.4} {:>8.3} {:>9.5} {:>8.2} {:>8.3} {:>8.4} {:>8.4}",
            r.cell.rho, r.tau, r.cell.gamma, r.gamma, r.cell.y_m, r.y_m, r.cell.fidelity, r.fidelity
        );
        csv.push(vec![
            num(r.cell.rho),
            num(r.tau),
            num(r.cell.gamma),
            num(r.gamma),
            num(r.cell.y_m),
            num(r.y_m),
            num(r.cell.fidelity),
            num(r.fidelity),
            num(r.fidelity_at_listed),
            num(r.fidelity - r.cell.fidelity),
        ]);
    }
    csv.write(&p.out)?;
    let failure = (worst > BENCHMARK_TOLERANCE).then(|| {
        CliError::Regression(format!(
            "largest fidelity deviation {worst:.5} exceeds {BENCHMARK_TOLERANCE}"
        ))
    });
    Ok(Outcome {
        outputs: vec![p.out.clone()],
        summary: json!({ "max_fidelity_deviation": worst, "tolerance": BENCHMARK_TOLERANCE }),
        failure,
    })
}

fn fidelity_map_cmd(p: &Params) -> Result<Outcome, CliError> {
    let t = template(p, p.gamma_min.max(f64::MIN_POSITIVE), 0.0)?;
    let map = fidelity_map(
        &t,
        (p.gamma_min, p.gamma_max),
        (p.ym_min, p.ym_max),
        (p.resolution, p.ym_resolution),
        p.grid_points,
    )
    .map_err(|e| CliError::Usage(e.to_string()))?;
    let mut csv = CsvTable::new(vec!["gamma", "y_m", "fidelity"]);
    let ny = map.axes[1].len();
    for (i, &g) in map.axes[0].iter().enumerate() {
        for (j, &y) in map.axes[1].iter().enumerate() {
            csv.push(vec![num(g), num(y), opt(map.values[i * ny + j])]);
        }
    }
    csv.write(&p.out)?;
    let best = map
        .values
        .iter()
        .flatten()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    println!("cells: {}, masked: {}, max F: {best:.4}", map.values.len(), map.masked_cells());
    Ok(Outcome {
        outputs: vec![p.out.clone()],
        summary: json!({ "cells": map.values.len(), "masked": map.masked_cells(), "max_fidelity": best }),
        failure: None,
    })
}

fn infidelity_slice_cmd(p: &Params) -> Result<Outcome, CliError> {
    let t = template(p, p.gamma_min.max(f64::MIN_POSITIVE), 0.0)?;
    let slice = infidelity_slice(
        &t,
        p.delta_q,
        (p.gamma_min, p.gamma_max),
        p.resolution,
        p.grid_points,
    )
    .map_err(|e| CliError::Usage(e.to_string()))?;
    let minima = find_optimal_gamma(&slice)?;
    let mut csv = CsvTable::new(vec!["gamma", "y_m", "infidelity"]);
    for (g, v) in slice.series() {
        csv.push(vec![num(g), num(ym_for_half_spacing(p.rho, p.tau, g, p.delta_q)?), opt(v)]);
    }
    csv.write(&p.out)?;
    let minima_path = sibling(&p.out, "_minima");
    let mut mcsv = CsvTable::new(vec!["gamma", "y_m", "infidelity"]);
    for &(g, v) in &minima {
        let y = ym_for_half_spacing(p.rho, p.tau, g, p.delta_q)?;
        println!("minimum: gamma = {g:.5}, y_m = {y:.4}, 1 - F = {v:.5}");
        mcsv.push(vec![num(g), num(y), num(v)]);
    }
    mcsv.write(&minima_path)?;
    Ok(Outcome {
        outputs: vec![p.out.clone(), minima_path],
        summary: json!({ "minima": minima }),
        failure: None,
    })
}

fn prob_curve(p: &Params) -> Result<Outcome, CliError> {
    let gammas: Vec<f64> = match p.gamma {
        Some(g) => vec![g],
        None => DEFAULT_PROBABILITY_GAMMAS.to_vec(),
    };
    let mut csv = CsvTable::new(vec![
        "gamma",
        "y_m",
        "s",
        "squeezing_db",
        "prob_density_per_unit_ym",
        "infidelity",
    ]);
    let mut peaks = CsvTable::new(vec![
        "gamma",
        "y_m",
        "s_peak",
        "squeezing_db_peak",
        "prob_density_peak",
    ]);
    let mut summary = Vec::new();
    for g in gammas {
        let y = outcome_for(p, g)?;
        let t = template(p, g, y)?;
        let curve = probability_curve(&t, (p.s_min, p.s_max), p.resolution)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        for (s, prob) in curve.series() {
            let cfg = t.with_s(s)?;
            let dq = half_spacing(&cfg, 0.0).unwrap_or(0.0);
            let inf = cat_for_half_spacing(&cfg, dq)
                .and_then(|cat| gate_fidelity(&cfg, &cat, p.grid_points))
                .map(|f| 1.0 - f)
                .ok();
            csv.push(vec![num(g), num(y), num(s), num(squeezing_db(s)), opt(prob), opt(inf)]);
        }
        let (s_peak, p_peak) = probability_peak(&t, (p.s_min, p.s_max), p.resolution)?;
        let db = squeezing_db(s_peak);
        println!("gamma = {g}, y_m = {y:.4}: peak at s = {s_peak:.4} ({db:.2} dB), P = {p_peak:.5}");
        peaks.push(vec![num(g), num(y), num(s_peak), num(db), num(p_peak)]);
        summary.push(json!({ "gamma": g, "y_m": y, "s_peak": s_peak, "db_peak": db }));
    }
    csv.write(&p.out)?;
    let peaks_path = sibling(&p.out, "_peaks");
    peaks.write(&peaks_path)?;
    Ok(Outcome {
        outputs: vec![p.out.clone(), peaks_path],
        summary: json!({ "peaks": summary }),
        failure: None,
    })
}

/// Momentum half-range and sample count covering a state centred at
/// momentum `centre` with coordinate squeezing `s_prime`, on a grid of
/// half-width `half_width`.
fn wigner_axes(p: &Params, centre: f64, s_prime: f64, half_width: f64) -> (f64, usize) {
    let p_max = p.p_max.unwrap_or(centre.abs() + 8.0 * s_prime + 4.0);
    let dp = std::f64::consts::PI / (4.0 * half_width);
    let num_p = p.num_p.unwrap_or((2.0 * p_max / dp).ceil() as usize + 1);
    (p_max, num_p)
}

fn write_wigner(w: &WignerGrid, path: &std::path::Path) -> std::io::Result<()> {
    let mut csv = CsvTable::new(vec!["x", "p", "wigner_per_unit_area"]);
    for (i, &x) in w.x_axis.iter().enumerate() {
        for (j, &pp) in w.p_axis.iter().enumerate() {
            csv.push(vec![num(x), num(pp), num(w.at(i, j))]);
        }
    }
    csv.write(path)
}

fn wigner_summary(w: &WignerGrid) -> serde_json::Value {
    json!({ "integral": w.integral(), "purity": w.purity(), "min": w.min() })
}

fn wigner_of(psi: &QuadratureGrid, p: &Params, p_max: f64, num_p: usize) -> Result<WignerGrid, CliError> {
    let stride = p
        .x_stride
        .unwrap_or((psi.spec().num_points / WIGNER_X_SAMPLES).max(1));
    wigner(psi, p_max, num_p, stride).map_err(|e| CliError::Usage(e.to_string()))
}

fn wigner_cmd(p: &Params) -> Result<Outcome, CliError> {
    let g = p.gamma.unwrap_or(DEFAULT_WIGNER_GAMMA);
    let y = outcome_for(p, g)?;
    let cfg = template(p, g, y)?;
    let grid = default_output_grid(&cfg, p.grid_points)?;
    let out = output_wf_closed(&cfg, grid)?;
    let (p_max, num_p) = wigner_axes(p, cfg.tau * y / cfg.rho, 1.0 / cfg.rho, grid.x_max);
    let w = wigner_of(&out.wavefunction, p, p_max, num_p)?;
    write_wigner(&w, &p.out)?;
    println!(
        "gamma = {g}, y_m = {y:.4}: integral {:.8}, purity {:.6}, min W {:.5}",
        w.integral(),
        w.purity(),
        w.min()
    );
    let mut summary = wigner_summary(&w);
    summary["prob_density"] = json!(out.prob_density);
    Ok(Outcome {
        outputs: vec![p.out.clone()],
        summary,
        failure: None,
    })
}

fn fock_compare(p: &Params) -> Result<Outcome, CliError> {
    let y = p.ym.unwrap_or(0.0);
    let cfg = FockGateConfig::new(p.rho, p.tau, p.n, y).map_err(|e| CliError::Usage(e.to_string()))?;
    let semiclassical = map_fock(&cfg, PhasePoint::ORIGIN).map(|b| b.half_spacing()).ok();
    let cat = PerfectCatSpec::odd(p.delta_q, -cfg.tau * y / cfg.rho, 1.0 / cfg.rho)?;
    let grid = GridSpec::for_cat(&cat, p.grid_points)?;
    let out = fock_output_wf(&cfg, grid)?;
    let reference = perfect_cat_wf(&cat, grid)?;
    let f = fidelity(&out.wavefunction, &reference)?;
    let mut csv = CsvTable::new(vec!["x", "re_psi_out", "im_psi_out", "re_psi_cat", "im_psi_cat"]);
    for (i, (a, b)) in out
        .wavefunction
        .samples()
        .iter()
        .zip(reference.samples())
        .enumerate()
    {
        csv.push(vec![num(grid.x(i)), num(a.re), num(a.im), num(b.re), num(b.im)]);
    }
    csv.write(&p.out)?;
    let (p_max, num_p) = wigner_axes(p, cat.alpha_dprime, cat.s_prime, grid.x_max);
    let w = wigner_of(&out.wavefunction, p, p_max, num_p)?;
    let wigner_path = sibling(&p.out, "_wigner");
    write_wigner(&w, &wigner_path)?;
    println!(
        "n = {}, y_m = {y}: F = {f:.4}, P = {:.5}, semiclassical half-spacing {}",
        p.n,
        out.prob_density,
        semiclassical.map_or("undefined".to_string(), |d| format!("{d:.4}"))
    );
    let mut summary = wigner_summary(&w);
    summary["fidelity"] = json!(f);
    summary["prob_density"] = json!(out.prob_density);
    summary["semiclassical_half_spacing"] = json!(semiclassical);
    Ok(Outcome {
        outputs: vec![p.out.clone(), wigner_path],
        summary,
        failure: None,
    })
}
