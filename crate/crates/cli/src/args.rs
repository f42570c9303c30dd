use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "qaccess", version, about = "Accessible information of two-state real qubit ensembles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepKind {
    /// Root count of f over random parameters.
    Roots,
    /// Orthogonal versus three-outcome optimum over random mixed pairs.
    Conjecture,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Output {
    /// Output file; stdout when absent. A `<out>.config.json` sidecar
    /// records the configuration.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Search {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 24)]
    pub restarts: usize,
    /// Coarse θ grid points on [0, π).
    #[arg(long, default_value_t = 4096)]
    pub grid: usize,
    #[arg(long, default_value_t = 1e-6)]
    pub tol_gap: f64,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case", tag = "subcommand")]
pub enum Command {
    /// Mutual information (bits) of a state pair under a POVM.
    MutualInfo {
        /// State pair JSON.
        #[arg(long)]
        input: PathBuf,
        /// POVM JSON.
        #[arg(long)]
        povm: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Samples of f, f′, f″ as CSV `t,f,fprime,fsecond`.
    FCurve {
        #[arg(long)]
        alpha1: f64,
        #[arg(long, allow_hyphen_values = true)]
        xi1: f64,
        #[arg(long)]
        eta1: f64,
        #[arg(long, allow_hyphen_values = true)]
        xi2: f64,
        #[arg(long)]
        eta2: f64,
        #[arg(long, default_value_t = -10.0, allow_hyphen_values = true)]
        t_min: f64,
        #[arg(long, default_value_t = 10.0, allow_hyphen_values = true)]
        t_max: f64,
        #[arg(long, default_value_t = 2001)]
        samples: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Compare the best orthogonal and three-outcome measurements.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        search: Search,
        #[command(flatten)]
        output: Output,
    },
    /// Best measurements for a state pair.
    Optimize {
        #[arg(long)]
        input: PathBuf,
        /// Outcome count for the general search; 4 is a stress mode.
        #[arg(long, default_value_t = 3)]
        outcomes: usize,
        #[command(flatten)]
        search: Search,
        #[command(flatten)]
        output: Output,
    },
    /// Discriminant sign certificate over a grid of (α₁, ξ², X).
    Certify {
        /// Points per axis.
        #[arg(long, default_value_t = 50)]
        grid: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Seeded batch runs.
    Sweep {
        #[arg(long, value_enum, default_value_t = SweepKind::Roots)]
        kind: SweepKind,
        #[arg(long)]
        seed: u64,
        /// Draws; defaults to 10000 for roots and 100 for conjecture.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 24)]
        restarts: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol_gap: f64,
        #[command(flatten)]
        output: Output,
    },
}
