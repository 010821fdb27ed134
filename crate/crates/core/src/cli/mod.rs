//! Command-line front end.
//!
//! Every command writes a CSV data file (header row naming columns and
//! units) and a JSON run manifest next to it. Parameters come from flags
//! and optionally from a `key = value` file given with `--config`; flags
//! take precedence.
//!
//! Exit codes: 0 success, 1 usage error, 2 numerical or I/O failure,
//! 3 benchmark mismatch (`table1` only).

mod commands;
mod config;
mod output;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

pub use config::ConfigFile;
pub use output::{CsvTable, RunManifest};

use crate::gate::{transmission_for, GateConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("numerical failure: {0}")]
    Numerical(#[from] crate::Error),
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
    #[error("benchmark mismatch: {0}")]
    Regression(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Numerical(_) | CliError::Io(_) => 2,
            CliError::Regression(_) => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "catgate", version, about = "Squeezed cat-state gate simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum CommandKind {
    Table1,
    FidelityMap,
    InfidelitySlice,
    ProbCurve,
    Wigner,
    FockCompare,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fidelities of the nine reference gates at half-spacing 2.87.
    Table1(CommonArgs),
    /// Fidelity over (γ, y_m) against the semiclassically predicted cat.
    FidelityMap(CommonArgs),
    /// Infidelity versus γ at fixed half-spacing, with refined minima.
    InfidelitySlice(CommonArgs),
    /// Outcome probability density and infidelity versus initial squeezing.
    ProbCurve(CommonArgs),
    /// Wigner function of the cubic-resource gate output.
    Wigner(CommonArgs),
    /// Fock-resource gate: fidelity, wavefunction and Wigner function.
    FockCompare(CommonArgs),
}

impl Command {
    fn split(self) -> (CommandKind, CommonArgs) {
        match self {
            Command::Table1(a) => (CommandKind::Table1, a),
            Command::FidelityMap(a) => (CommandKind::FidelityMap, a),
            Command::InfidelitySlice(a) => (CommandKind::InfidelitySlice, a),
            Command::ProbCurve(a) => (CommandKind::ProbCurve, a),
            Command::Wigner(a) => (CommandKind::Wigner, a),
            Command::FockCompare(a) => (CommandKind::FockCompare, a),
        }
    }
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Table1 => "table1",
            CommandKind::FidelityMap => "fidelity-map",
            CommandKind::InfidelitySlice => "infidelity-slice",
            CommandKind::ProbCurve => "prob-curve",
            CommandKind::Wigner => "wigner",
            CommandKind::FockCompare => "fock-compare",
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Parameter file with `key = value` lines
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Beamsplitter reflection ρ
    #[arg(long)]
    pub rho: Option<f64>,
    /// Beamsplitter transmission τ (defaults to √(1 − ρ²))
    #[arg(long)]
    pub tau: Option<f64>,
    /// Initial squeezing factor s of the resource
    #[arg(long)]
    pub s: Option<f64>,
    /// Cubic nonlinearity γ
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Momentum measurement outcome y_m (defaults to the value giving --delta-q)
    #[arg(long, allow_hyphen_values = true)]
    pub ym: Option<f64>,
    /// Half-spacing Δq between the cat components
    #[arg(long = "delta-q")]
    pub delta_q: Option<f64>,
    /// Photon number of the Fock resource
    #[arg(long)]
    pub n: Option<usize>,
    /// Coordinate grid points
    #[arg(long = "grid-points")]
    pub grid_points: Option<usize>,
    /// Output CSV path
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long = "gamma-min")]
    pub gamma_min: Option<f64>,
    #[arg(long = "gamma-max")]
    pub gamma_max: Option<f64>,
    #[arg(long = "ym-min", allow_hyphen_values = true)]
    pub ym_min: Option<f64>,
    #[arg(long = "ym-max", allow_hyphen_values = true)]
    pub ym_max: Option<f64>,
    #[arg(long = "s-min")]
    pub s_min: Option<f64>,
    #[arg(long = "s-max")]
    pub s_max: Option<f64>,
    /// Samples along the first sweep axis
    #[arg(long)]
    pub resolution: Option<usize>,
    /// Samples along the y_m axis of the fidelity map
    #[arg(long = "ym-resolution")]
    pub ym_resolution: Option<usize>,
    /// Momentum half-range of the Wigner grid
    #[arg(long = "p-max")]
    pub p_max: Option<f64>,
    /// Momentum samples of the Wigner grid
    #[arg(long = "num-p")]
    pub num_p: Option<usize>,
    /// Stride over coordinate grid points for the Wigner grid
    #[arg(long = "x-stride")]
    pub x_stride: Option<usize>,
}

/// Effective parameters of a run after merging flags, file and defaults.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Params {
    pub rho: f64,
    pub tau: f64,
    pub s: f64,
    pub gamma: Option<f64>,
    pub ym: Option<f64>,
    pub delta_q: f64,
    pub n: usize,
    pub grid_points: usize,
    pub out: PathBuf,
    pub gamma_min: f64,
    pub gamma_max: f64,
    pub ym_min: f64,
    pub ym_max: f64,
    pub s_min: f64,
    pub s_max: f64,
    pub resolution: usize,
    pub ym_resolution: usize,
    pub p_max: Option<f64>,
    pub num_p: Option<usize>,
    pub x_stride: Option<usize>,
}

impl Params {
    pub fn resolve(kind: CommandKind, args: CommonArgs) -> Result<Self, CliError> {
        let file = match &args.config {
            Some(p) => ConfigFile::load(p)?,
            None => ConfigFile::default(),
        };
        let rho = file.pick(args.rho, "rho")?;
        let tau = file.pick(args.tau, "tau")?;
        let (rho, tau) = match (rho, tau) {
            (Some(r), Some(t)) => (r, t),
            (Some(r), None) => (r, transmission_for(r)),
            (None, Some(t)) => (transmission_for(t), t),
            (None, None) => (0.5, transmission_for(0.5)),
        };
        let default_resolution = match kind {
            CommandKind::FidelityMap => 41,
            CommandKind::InfidelitySlice => 301,
            CommandKind::ProbCurve => 100,
            _ => 0,
        };
        let p = Params {
            rho,
            tau,
            s: file.pick(args.s, "s")?.unwrap_or(0.2),
            gamma: file.pick(args.gamma, "gamma")?,
            ym: file.pick(args.ym, "ym")?,
            delta_q: file.pick(args.delta_q, "delta-q")?.unwrap_or(2.87),
            n: file.pick(args.n, "n")?.unwrap_or(5),
            grid_points: file.pick(args.grid_points, "grid-points")?.unwrap_or(4096),
            out: file
                .pick(args.out, "out")?
                .unwrap_or_else(|| PathBuf::from(format!("{}.csv", kind.name()))),
            gamma_min: file.pick(args.gamma_min, "gamma-min")?.unwrap_or(0.05),
            gamma_max: file.pick(args.gamma_max, "gamma-max")?.unwrap_or(0.35),
            ym_min: file.pick(args.ym_min, "ym-min")?.unwrap_or(0.0),
            ym_max: file.pick(args.ym_max, "ym-max")?.unwrap_or(6.0),
            s_min: file.pick(args.s_min, "s-min")?.unwrap_or(0.01),
            s_max: file.pick(args.s_max, "s-max")?.unwrap_or(1.0),
            resolution: file
                .pick(args.resolution, "resolution")?
                .unwrap_or(default_resolution),
            ym_resolution: file.pick(args.ym_resolution, "ym-resolution")?.unwrap_or(41),
            p_max: file.pick(args.p_max, "p-max")?,
            num_p: file.pick(args.num_p, "num-p")?,
            x_stride: file.pick(args.x_stride, "x-stride")?,
        };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<(), CliError> {
        // Beamsplitter and resource checks reuse the gate's own validation.
        let gamma = self.gamma.unwrap_or(0.1);
        GateConfig::new(self.rho, self.tau, self.s, gamma, self.ym.unwrap_or(0.0))
            .map_err(|e| CliError::Usage(e.to_string()))?;
        if !(self.delta_q >= 0.0 && self.delta_q.is_finite()) {
            return Err(CliError::Usage(format!(
                "--delta-q must be non-negative, got {}",
                self.delta_q
            )));
        }
        if self.grid_points < 16 {
            return Err(CliError::Usage(format!(
                "--grid-points must be at least 16, got {}",
                self.grid_points
            )));
        }
        Ok(())
    }
}

/// Parses `args` (including the program name) and runs the command;
/// returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let (kind, args) = cli.command.split();
    let result = Params::resolve(kind, args).and_then(|p| commands::execute(kind, &p));
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("catgate {}: {e}", kind.name());
            e.exit_code()
        }
    }
}
