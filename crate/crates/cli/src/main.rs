mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "lrcp", version, about = "Long-range percolation, cumulatively merged partitions and the contact process")]
pub struct Cli {
    /// Master seed; required by every randomized command.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Primary output file (default: stdout).
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Output format (default: json for `constants`, csv otherwise).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads for parallel trials.
    #[arg(long, global = true, env = "LRCP_THREADS")]
    pub threads: Option<usize>,
    /// Manifest path (default: `<output>.manifest.json` when --output is set).
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug, Serialize)]
pub enum Command {
    /// Sample G_s on the window [lo, hi] and write it as a graph file.
    Sample(SampleArgs),
    /// List cut-points of a window with their outside-edge tail bounds.
    Cutpoints(GraphSource),
    /// Sample renewal blocks; more than one are glued end to end.
    Block(BlockArgs),
    /// Cumulatively merged partition of a window under degree weights.
    Cmp(CmpArgs),
    /// Statistical checks of the tail bounds; exits 1 if any cell fails.
    Verify(VerifyArgs),
    /// Explicit constants evaluated in the log domain.
    Constants(ConstantsArgs),
    /// Finite-horizon survival probability of the contact process.
    Survival(SurvivalArgs),
    /// Bisection for the lambda at which survival crosses a target level.
    Threshold(ThresholdArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct SampleArgs {
    #[arg(long)]
    pub s: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub lo: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub hi: i64,
    /// Row-wise geometric skipping instead of one uniform per pair.
    #[arg(long)]
    pub fast: bool,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct GraphSource {
    /// Graph file written by `sample`.
    #[arg(long, conflicts_with_all = ["s", "lo", "hi", "fast"])]
    pub graph: Option<PathBuf>,
    #[arg(long)]
    pub s: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub lo: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub hi: Option<i64>,
    #[arg(long)]
    pub fast: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct BlockArgs {
    #[arg(long)]
    pub s: f64,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct CmpArgs {
    #[command(flatten)]
    pub source: GraphSource,
    /// Degree threshold: vertices of degree below it weigh zero.
    #[arg(long)]
    pub delta: f64,
    /// Expansion exponent, decimal or a ratio such as 5/2.
    #[arg(long, default_value = "5/2")]
    pub alpha: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Cutpoint,
    EpsilonTail,
    TTail,
    DegreeTail,
    Projection,
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub check: Check,
    #[arg(long)]
    pub s: f64,
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    /// Window half-width for cutpoint (default 200) and degree-tail (default 1000).
    #[arg(long)]
    pub half_width: Option<i64>,
    /// Largest degree tested by degree-tail.
    #[arg(long, default_value_t = 20)]
    pub k_max: u64,
    /// Blocks glued per projection trial.
    #[arg(long, default_value_t = 20)]
    pub blocks: usize,
    /// Degree threshold for projection.
    #[arg(long, default_value_t = 4.0)]
    pub delta: f64,
    #[arg(long, default_value = "5/2")]
    pub alpha: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Constants {
    BetaC,
    CertifyDelta,
}

#[derive(Args, Debug, Serialize)]
pub struct ConstantsArgs {
    #[arg(value_enum)]
    pub which: Constants,
    #[arg(long, default_value_t = 2.5)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1)]
    pub d: u32,
    /// Decay exponent for certify-delta.
    #[arg(long)]
    pub s: Option<f64>,
    /// log2 of beta for certify-delta (default: half of beta_c).
    #[arg(long, allow_hyphen_values = true)]
    pub log2_beta: Option<f64>,
}

#[derive(Args, Debug, Serialize)]
pub struct SurvivalArgs {
    #[command(flatten)]
    pub source: GraphSource,
    /// Comma-separated infection rates.
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    pub lambda: Vec<f64>,
    /// Vertex label of the single initially infected site.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub origin: i64,
    #[arg(long, default_value_t = 50.0)]
    pub t_max: f64,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    /// Share one graphical construction per trial across all rates.
    #[arg(long)]
    pub coupled: bool,
    /// Gillespie event log of the first trial at the first rate.
    #[arg(long, conflicts_with = "coupled")]
    pub trajectory: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct ThresholdArgs {
    #[command(flatten)]
    pub source: GraphSource,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub origin: i64,
    #[arg(long, default_value_t = 50.0)]
    pub t_max: f64,
    #[arg(long, default_value_t = 0.5)]
    pub target: f64,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda_lo: f64,
    #[arg(long)]
    pub lambda_hi: f64,
    #[arg(long, default_value_t = 0.01)]
    pub resolution: f64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(commands::Status::Ok) => ExitCode::SUCCESS,
        Ok(commands::Status::CheckFailed(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(e) => {
            let msg = format!("{e:#}").replace('\n', " ");
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
