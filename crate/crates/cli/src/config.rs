//! Command-line surface and run configuration.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "zpe",
    version,
    about = "Statistical thermodynamics of the harmonic oscillator with zero-point energy",
    after_help = "Exit codes: 0 success, 1 verification failure, 2 usage error, \
                  3 numeric-domain or I/O error."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Equilibrium thermodynamics table: U, U_T, sigma^2, C_V, S, Z.
    Spectrum(CommonArgs),
    /// Variance-ansatz law: mean energy and dispersion along the grid.
    Variance(CommonArgs),
    /// Discrete level structure: partition sums, ground weight, occupation.
    Discrete(CommonArgs),
    /// Energy moments and the derivative-recurrence residual.
    Moments(CommonArgs),
    /// Fluctuation decomposition and the statistical entropy.
    Statistical(CommonArgs),
    /// Phase-space variances and the uncertainty product.
    Wigner(CommonArgs),
    /// Interpolation reconstruction and the wave/particle fluctuation split.
    Historical(CommonArgs),
    /// Seeded Monte Carlo batches against their closed-form references.
    Mc(CommonArgs),
    /// Run the full cross-module invariant suite; exit 0 iff all pass.
    Verify(CommonArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Spectrum(_) => "spectrum",
            Command::Variance(_) => "variance",
            Command::Discrete(_) => "discrete",
            Command::Moments(_) => "moments",
            Command::Statistical(_) => "statistical",
            Command::Wigner(_) => "wigner",
            Command::Historical(_) => "historical",
            Command::Mc(_) => "mc",
            Command::Verify(_) => "verify",
        }
    }

    pub fn args(&self) -> &CommonArgs {
        match self {
            Command::Spectrum(a)
            | Command::Variance(a)
            | Command::Discrete(a)
            | Command::Moments(a)
            | Command::Statistical(a)
            | Command::Wigner(a)
            | Command::Historical(a)
            | Command::Mc(a)
            | Command::Verify(a) => a,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Args, Serialize)]
pub struct CommonArgs {
    /// Zero-point energy; overrides hbar*omega/2 when given.
    #[arg(long)]
    pub e0: Option<f64>,

    /// Angular frequency.
    #[arg(long, default_value_t = 2.0)]
    pub omega: f64,

    /// Action constant (0 selects the classical branch).
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,

    /// Boltzmann constant.
    #[arg(long, default_value_t = 1.0)]
    pub k: f64,

    /// Oscillator mass (phase-space quantities only).
    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,

    /// Lower end of the inverse-temperature grid.
    #[arg(long = "beta-min", default_value_t = 0.01)]
    pub beta_min: f64,

    /// Upper end of the inverse-temperature grid.
    #[arg(long = "beta-max", default_value_t = 100.0)]
    pub beta_max: f64,

    /// Number of grid points (1 evaluates at beta-min only).
    #[arg(long = "beta-count", default_value_t = 50)]
    pub beta_count: usize,

    /// Logarithmic grid spacing; the interesting crossovers are log-scale.
    #[arg(long = "beta-log", default_value_t = true, action = clap::ArgAction::Set)]
    pub beta_log: bool,

    /// RNG seed; the ZPE_SEED environment variable is the fallback.
    #[arg(long, env = "ZPE_SEED", default_value_t = 42)]
    pub seed: u64,

    /// Monte Carlo draw count per batch.
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,

    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,

    /// Output path; stdout when omitted.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

impl CommonArgs {
    /// Validate the grid specification before any computation.
    pub fn validate(&self) -> Result<(), String> {
        if !(self.beta_min > 0.0 && self.beta_min.is_finite()) {
            return Err(format!(
                "--beta-min must be positive, got {}",
                self.beta_min
            ));
        }
        if !(self.beta_max >= self.beta_min && self.beta_max.is_finite()) {
            return Err(format!(
                "--beta-max must be >= --beta-min, got {} < {}",
                self.beta_max, self.beta_min
            ));
        }
        if self.beta_count == 0 {
            return Err("--beta-count must be at least 1".into());
        }
        if let Some(e0) = self.e0 {
            if !(e0 >= 0.0 && e0.is_finite()) {
                return Err(format!("--e0 must be non-negative, got {e0}"));
            }
        }
        Ok(())
    }

    /// The inverse-temperature grid, ordered ascending.
    pub fn beta_grid(&self) -> Vec<f64> {
        let n = self.beta_count;
        if n == 1 {
            return vec![self.beta_min];
        }
        (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                if self.beta_log {
                    (self.beta_min.ln() + (self.beta_max.ln() - self.beta_min.ln()) * t).exp()
                } else {
                    self.beta_min + (self.beta_max - self.beta_min) * t
                }
            })
            .collect()
    }
}
