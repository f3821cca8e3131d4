use std::path::PathBuf;
use std::process::ExitCode;

use bandit_replay::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};

mod algo;
mod analyze;
mod generate;
mod output;
mod replay;

pub use algo::AlgoKind;

/// Offline evaluation of bandit algorithms by replaying logged events.
#[derive(Parser, Debug)]
#[command(name = "bandit-replay", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Draw a log of uniformly (or explicitly) logged events from a world.
    Generate(GenerateArgs),
    /// Replay a log against one algorithm and print its per-trial payoff.
    Replay(ReplayArgs),
    /// Run a replication, convergence, bound or consistency study.
    Analyze(Box<AnalyzeArgs>),
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    /// World description (TOML).
    #[arg(long)]
    pub world: PathBuf,
    /// Number of events to write.
    #[arg(long)]
    pub events: usize,
    /// Overrides the seed in the world file.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Log file to write.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug, Clone)]
pub struct AlgoArgs {
    /// Arm played by the fixed policy.
    #[arg(long, default_value_t = 0)]
    pub arm: u32,
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReplayMode {
    /// Stop after `--target-t` matches.
    Infinite,
    /// One pass over the whole log.
    Finite,
    /// Thin a non-uniform log first, then one pass.
    Rejection,
}

#[derive(Args, Debug)]
pub struct ReplayArgs {
    #[arg(long)]
    pub log: PathBuf,
    #[arg(long, value_enum)]
    pub algo: AlgoKind,
    #[command(flatten)]
    pub params: AlgoArgs,
    #[arg(long, value_enum, default_value_t = ReplayMode::Finite)]
    pub mode: ReplayMode,
    /// Number of matched events to collect in infinite mode.
    #[arg(long)]
    pub target_t: Option<usize>,
    /// Smallest logging propensity, for rejection mode.
    #[arg(long)]
    pub p_min: Option<f64>,
    #[arg(long)]
    pub seed: u64,
    /// CSV destination; standard output if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnalysisKind {
    Replicate,
    Convergence,
    Bounds,
    Consistency,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    #[arg(long, value_enum)]
    pub kind: AnalysisKind,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Logged events (replicate).
    #[arg(long)]
    pub log: Option<PathBuf>,
    /// World description (convergence, bounds coverage, consistency).
    #[arg(long)]
    pub world: Option<PathBuf>,
    /// One or more algorithms, comma separated.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub algo: Vec<AlgoKind>,
    #[command(flatten)]
    pub params: AlgoArgs,
    #[arg(long)]
    pub runs: Option<usize>,
    #[arg(long, default_value_t = 0.5)]
    pub subsample_p: f64,
    /// Give every replicate run the same seed.
    #[arg(long)]
    pub identical_seeds: bool,
    /// Log sizes for the convergence curve, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub l_grid: Vec<usize>,
    /// Confidence parameters for the bound, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub delta: Vec<f64>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub l: Option<usize>,
    #[arg(long)]
    pub g: Option<f64>,
    #[arg(long)]
    pub segments: Option<usize>,
    /// Uniform log size per consistency segment.
    #[arg(long)]
    pub events: Option<usize>,
    /// Online horizon per consistency segment; defaults to the offline T.
    #[arg(long)]
    pub online_trials: Option<usize>,
    /// Per-segment online payoff factor drawn from LOW,HIGH.
    #[arg(long, value_delimiter = ',', value_name = "LOW,HIGH")]
    pub perturb: Vec<f64>,
    /// Largest acceptable std/mean for replicate.
    #[arg(long, default_value_t = 0.05)]
    pub max_rel_std: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub slope_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub slope_max: Option<f64>,
    /// Largest acceptable residual std of the consistency regression.
    #[arg(long, default_value_t = 0.1)]
    pub max_residual: f64,
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::NoValidEvents | Error::StreamExhausted { .. } | Error::AllRunsExcluded { .. } => 3,
        Error::BoundUndefined { .. } => 3,
        Error::Config(_)
        | Error::InvalidParameter { .. }
        | Error::Version { .. }
        | Error::NotFixedPolicy
        | Error::NonUniformPropensity { .. }
        | Error::PropensityBound { .. }
        | Error::LoggerNotNormalized { .. } => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Generate(args) => generate::run(&args),
        Command::Replay(args) => replay::run(&args),
        Command::Analyze(args) => analyze::run(&args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("bandit-replay: {err}");
            if let Error::StreamExhausted { partial, .. } = &err {
                eprintln!(
                    "  partial: T={} L={} payoff={}",
                    partial.retained, partial.consumed, partial.total_payoff
                );
            }
            ExitCode::from(exit_code(&err))
        }
    }
}
