//! `subsel`: star discrepancy computation and low-discrepancy subset
//! selection from the command line.
//!
//! Point sets are plain text (one point per line), reports are JSON and
//! comparison grids are CSV. Exit status is 2 for invalid arguments, 1 for
//! failures while computing and 0 otherwise.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "subsel", version, about = "Star discrepancy subset selection")]
struct Cli {
    /// Log progress to stderr (-v info, -vv debug).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,

    /// Worker cap. Runs are currently serial, so any value gives the same output.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    threads: u16,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a Sobol' or uniformly random point set.
    Gen(GenArgs),
    /// Star discrepancy of a point file.
    Disc(DiscArgs),
    /// Select a low-discrepancy k-subset.
    Subset(SubsetArgs),
    /// Energy of a point file, optionally minimised by gradient descent.
    Energy(EnergyArgs),
    /// Gradient descent followed by subset selection.
    Pipeline(PipelineArgs),
    /// Smallest Sobol' prefix reaching a discrepancy target.
    Inverse(InverseArgs),
    /// Build and check a set with a non-global 1-swap local minimum.
    Adversarial(AdversarialArgs),
    /// Run a comparison grid described by a JSON file.
    Compare(CompareArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DiscEngine {
    Exact,
    Ta,
    Brute,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SearchEngine {
    Exact,
    Ta,
}

#[derive(Args, Debug)]
#[group(id = "source", required = true, multiple = false)]
struct Source {
    /// First n points of the Sobol' sequence.
    #[arg(long, group = "source")]
    sobol: bool,
    /// n i.i.d. uniform points.
    #[arg(long, group = "source")]
    random: bool,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long)]
    n: usize,
    /// Output dimension.
    #[arg(long)]
    d: usize,
    /// Seed for --random (default 0).
    #[arg(long)]
    seed: Option<u64>,
    /// Generate d−1 coordinates and append i/n (i = 1..n) as the last one.
    #[arg(long)]
    lift: bool,
    /// Output file (default stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DiscArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "exact")]
    engine: DiscEngine,
    /// TA evaluation budget.
    #[arg(long, default_value_t = 100_000)]
    budget: u64,
    /// TA seed (default 0).
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args, Debug)]
struct HeuristicArgs {
    #[arg(long, value_enum, default_value = "exact")]
    engine: SearchEngine,
    /// Run the brute-force certification step (default).
    #[arg(long, overrides_with = "nbf")]
    bf: bool,
    /// Stop once the edge scan finds nothing.
    #[arg(long, overrides_with = "bf")]
    nbf: bool,
    #[arg(long, default_value_t = 10)]
    restarts: usize,
    /// Seed (default 0).
    #[arg(long)]
    seed: Option<u64>,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    cutoff: Option<f64>,
    /// Per-call TA budget when --engine ta.
    #[arg(long, default_value_t = 10_000)]
    budget: u64,
    /// Accept equal-value swaps.
    #[arg(long)]
    plateau: bool,
    /// Certify against every 1-swap, not only the witness-guided ones.
    #[arg(long)]
    full_check: bool,
}

#[derive(Args, Debug)]
struct SubsetArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    k: usize,
    #[command(flatten)]
    heuristic: HeuristicArgs,
    /// Chosen points (default: alongside the input as <stem>.k<k>.txt).
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON report (default stdout).
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DescentArgs {
    #[arg(long, default_value_t = 2000)]
    max_iters: usize,
    /// Initial step (default 1e-3/n).
    #[arg(long)]
    step: Option<f64>,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Args, Debug)]
struct EnergyArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Run gradient descent.
    #[arg(long)]
    optimize: bool,
    #[command(flatten)]
    descent: DescentArgs,
    /// Descended points (with --optimize).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Energy trace as JSON (with --optimize).
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args, Debug)]
struct PipelineArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    k: usize,
    #[command(flatten)]
    heuristic: HeuristicArgs,
    #[command(flatten)]
    descent: DescentArgs,
    /// Chosen points.
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON report (default stdout).
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct InverseArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    eps: f64,
    #[arg(long, default_value_t = 100)]
    nmax: usize,
    /// Default: exact up to d = 6, TA beyond.
    #[arg(long, value_enum)]
    engine: Option<SearchEngine>,
    /// Probe log (default inverse_d<d>_eps<eps>.log).
    #[arg(long)]
    log: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args, Debug)]
struct AdversarialArgs {
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 1e-3)]
    alpha: f64,
    #[arg(long, default_value_t = 2)]
    d: usize,
    /// Instance points; rows 0..k are set A, k..2k set B.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args, Debug)]
struct CompareArgs {
    /// JSON experiment descriptor.
    #[arg(long)]
    spec: PathBuf,
    /// CSV output (default stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Why a run failed, mapped to the exit status.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Compute(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Compute(e)
    }
}

impl From<subsel::Error> for Failure {
    fn from(e: subsel::Error) -> Self {
        use subsel::Error::*;
        match e {
            InvalidArgument(_) | Infeasible(_) | UnsupportedDimension { .. } => Failure::Usage(e.to_string()),
            e => Failure::Compute(e.into()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Compute(e.into())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Compute(e.into())
    }
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new().filter_level(level).init();

    let result = match cli.command {
        Command::Gen(a) => commands::gen(a),
        Command::Disc(a) => commands::disc(a),
        Command::Subset(a) => commands::subset(a),
        Command::Energy(a) => commands::energy(a),
        Command::Pipeline(a) => commands::pipeline(a),
        Command::Inverse(a) => commands::inverse(a),
        Command::Adversarial(a) => commands::adversarial(a),
        Command::Compare(a) => commands::compare(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
