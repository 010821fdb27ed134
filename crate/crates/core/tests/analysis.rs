//! Fidelity, Wigner transform and sweeps.

use std::f64::consts::PI;

use catgate::analysis::{
    fidelity, fidelity_map, find_optimal_gamma, fock_fidelity, gate_fidelity, infidelity_at,
    infidelity_slice, momentum_density, probability_curve, wigner, Metric,
};
use catgate::gate::{default_output_grid, output_wf_closed, FockGateConfig, GateConfig};
use catgate::semiclassical::{map_fock, ym_for_half_spacing, PhasePoint};
use catgate::states::{perfect_cat_wf, vacuum_wf, GridSpec, PerfectCatSpec};

fn headline() -> GateConfig {
    GateConfig::from_rho(0.5, 0.2, 0.289, 4.77).unwrap()
}

#[test]
fn wigner_of_vacuum_and_odd_cat() {
    let g = GridSpec::symmetric(10.0, 1001).unwrap();
    let w = wigner(&vacuum_wf(g), 10.0, 201, 10).unwrap();
    assert!((w.at(50, 100) - 1.0 / PI).abs() < 1e-10);

    let cat = PerfectCatSpec::odd(2.87, 0.0, 2.0).unwrap();
    let grid = GridSpec::for_cat(&cat, 1001).unwrap();
    let psi = perfect_cat_wf(&cat, grid).unwrap();
    let w = wigner(&psi, 20.0, 401, 500).unwrap();
    assert_eq!(w.x_axis.len(), 3);
    let centre = w.at(1, 200);
    assert!(((centre + 1.0 / PI) / (1.0 / PI)).abs() < 0.01, "W(0,0) = {centre}");
}

#[test]
fn wigner_of_gate_output_is_a_pure_state_density() {
    let cfg = headline();
    let grid = default_output_grid(&cfg, 1024).unwrap();
    let out = output_wf_closed(&cfg, grid).unwrap();
    let psi = &out.wavefunction;
    let half = grid.x_max;
    let p_max = 30.0;
    let num_p = (2.0 * p_max / (PI / (4.0 * half))).ceil() as usize + 1;
    let w = wigner(psi, p_max, num_p, 4).unwrap();

    assert!((w.integral() - 1.0).abs() < 1e-6, "∬W = {}", w.integral());
    assert!((w.purity() - 1.0).abs() < 1e-4, "purity {}", w.purity());
    assert!(w.min() < -0.05, "interference fringes expected, min W = {}", w.min());

    for (k, m) in w.x_marginal().iter().enumerate() {
        let direct = psi.samples()[4 * k].norm_sqr();
        assert!((m - direct).abs() < 1e-6, "x = {}: {m} vs {direct}", w.x_axis[k]);
    }
    let p_density = momentum_density(psi, &w.p_axis);
    for (j, (m, d)) in w.p_marginal().iter().zip(&p_density).enumerate() {
        assert!((m - d).abs() < 1e-6, "p = {}: {m} vs {d}", w.p_axis[j]);
    }
}

#[test]
fn map_matches_slice_on_the_fixed_spacing_line() {
    let t = headline();
    let dq = 2.87;
    let gammas = [0.2, 0.25, 0.3];
    for &g in &gammas {
        let y = ym_for_half_spacing(t.rho, t.tau, g, dq).unwrap();
        let map = fidelity_map(&t, (g, g + 0.01), (y, y + 0.1), (2, 2), 1024).unwrap();
        let from_map = map.values[0].unwrap();
        let from_slice = 1.0 - infidelity_at(&t, dq, g, 1024).unwrap();
        assert!((from_map - from_slice).abs() < 1e-12, "γ={g}");
    }
}

#[test]
fn fidelity_map_is_bounded_and_finds_good_gates() {
    let t = headline();
    // Passes through (γ, y_m) = (0.2896, 4.771).
    let map = fidelity_map(&t, (0.2856, 0.2936), (4.571, 4.971), (11, 9), 1024).unwrap();
    assert_eq!(map.metric, Metric::Fidelity);
    assert_eq!(map.values.len(), 99);
    assert_eq!(map.masked_cells(), 0);
    for v in map.values.iter().flatten() {
        assert!((0.0..=1.0).contains(v));
    }
    let best = map.values.iter().flatten().copied().fold(0.0, f64::max);
    assert!(best > 0.96, "best {best}");
}

#[test]
fn headline_slice_minima() {
    let t = headline();
    let slice = infidelity_slice(&t, 2.87, (0.05, 0.35), 151, 1024).unwrap();
    let minima = find_optimal_gamma(&slice).unwrap();
    assert!(minima.len() >= 2);
    for target in [0.115, 0.202, 0.289] {
        let hit = minima.iter().any(|(g, _)| (g - target).abs() <= 0.005);
        assert!(hit, "no minimum near {target}: {minima:?}");
    }
    let deepest = minima
        .iter()
        .find(|(g, _)| (g - 0.289).abs() <= 0.005)
        .unwrap();
    assert!((deepest.1 - 0.0374).abs() < 0.002, "{deepest:?}");
}

#[test]
fn fock_benchmark() {
    let cfg = FockGateConfig::from_rho(0.5, 5, 0.0).unwrap();
    let branches = map_fock(&cfg, PhasePoint::ORIGIN).unwrap();
    assert_eq!(branches.half_spacing(), cfg.tau * 11f64.sqrt());
    let cat = PerfectCatSpec::odd(2.87, 0.0, 2.0).unwrap();
    let f = fock_fidelity(&cfg, &cat, 2048).unwrap();
    assert!((f - 0.865).abs() < 0.005, "F = {f}");
}

#[test]
fn probability_curve_limits() {
    for &(g, y) in &[(0.202, 3.34), (0.289, 4.77)] {
        let t = GateConfig::from_rho(0.5, 0.2, g, y).unwrap();
        let curve = probability_curve(&t, (0.01, 1.0), 100).unwrap();
        let values: Vec<f64> = curve.values.iter().map(|v| v.unwrap()).collect();
        let peak = values.iter().copied().fold(0.0, f64::max);
        assert!(values[0] < 0.1 * peak, "deep squeezing: {}", values[0]);
        // P shrinks in proportion to s as s → 0.
        assert!(values[..5].windows(2).all(|w| w[0] < w[1]));
        let ratio = values[0] / values[1];
        assert!((ratio - 0.5).abs() < 0.1, "P(0.01)/P(0.02) = {ratio}");
        assert!(values[99] < 0.05 * peak, "no squeezing: {}", values[99]);
    }
}

#[test]
fn gate_fidelity_is_phase_blind_to_the_reference() {
    let cfg = headline();
    let cat = PerfectCatSpec::odd(2.87, -cfg.tau * cfg.y_m / cfg.rho, 2.0).unwrap();
    let f = gate_fidelity(&cfg, &cat, 1024).unwrap();
    let grid = GridSpec::for_cat(&cat, 1024).unwrap();
    let out = output_wf_closed(&cfg, grid).unwrap().wavefunction;
    let reference = perfect_cat_wf(&cat, grid).unwrap().with_global_phase(2.2);
    assert!((fidelity(&out, &reference).unwrap() - f).abs() < 1e-12);
}
