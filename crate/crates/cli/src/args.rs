use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "fracbound", version, about = "Fractional Ostrowski-Gruss inequality verifier")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a full corpus sweep from a JSON config and write the report.
    Verify(VerifyArgs),
    /// Emit per-x curves of the main inequality for one function as CSV.
    Sweep(SweepArgs),
    /// Search a parametric family for the largest lhs/rhs ratio of one bound.
    Probe(ProbeArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Overrides `output_path` from the config.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Overrides `format` from the config.
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Function as `family:params`, e.g. `poly:0,0,1` or `sigmoid:0.5,40`.
    #[arg(long, allow_hyphen_values = true)]
    pub function: String,
    /// Interval as `a,b`.
    #[arg(long, default_value = "0,1", allow_hyphen_values = true)]
    pub interval: String,
    /// Orders as `start:stop:step` or a comma-separated list.
    #[arg(long, default_value = "1")]
    pub alpha: String,
    #[arg(long = "x-grid", default_value_t = 41)]
    pub x_grid: usize,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ProbeArgs {
    /// Level id, e.g. `gruss` or `main_frac_l2`.
    #[arg(long)]
    pub bound: String,
    /// One of `sigmoid`, `linear-pair`, `constant`, `sine`.
    #[arg(long)]
    pub family: String,
    #[arg(long, default_value_t = 50)]
    pub budget: usize,
    #[arg(long, default_value = "0,1", allow_hyphen_values = true)]
    pub interval: String,
    /// Evaluation point for point-wise bounds (defaults to the left endpoint).
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    /// Append the probe record as one JSON line to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
