//! Fidelity, Wigner transform and the parameter sweeps built on the gate.

mod benchmark;
mod fidelity;
mod sweep;
mod wigner;

pub use benchmark::{
    benchmark_table, evaluate_benchmark_cell, BenchmarkCell, BenchmarkRow, BENCHMARK_CELLS,
    BENCHMARK_DELTA_Q, BENCHMARK_GAMMA_WINDOW, BENCHMARK_S,
};
pub use fidelity::{
    cat_for_half_spacing, fidelity, fock_fidelity, gate_fidelity, momentum_density,
    momentum_mean,
};
pub use sweep::{
    fidelity_map, find_optimal_gamma, find_optimal_gamma_with, golden_section_min,
    infidelity_at, infidelity_slice, probability_curve, probability_peak, squeezing_db,
    squeezing_from_db, Metric, SweepResult,
};
pub use wigner::{wigner, WignerGrid};
