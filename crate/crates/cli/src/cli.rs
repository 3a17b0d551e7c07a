use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "schatten-lambda",
    version,
    about = "Lambda-function of Schatten-class unit balls: closed forms, decompositions and numerical checks"
)]
pub struct Cli {
    /// Seed for every random draw (required by `verify --random`).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Overrides the tolerance of the command's check.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub output: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormArg {
    Trace,
    Operator,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate λ(a) for a matrix file.
    Lambda(LambdaArgs),
    /// Split a as t·e + (1−t)·y and audit the split.
    Decompose(DecomposeArgs),
    /// Minimize ‖a − t·e‖_p^p over rank-one partial isometries e.
    MinimizeRankOne(MinimizeArgs),
    /// Check an inequality or identity on given or random matrices.
    Verify(VerifyArgs),
    /// Run a seeded randomized campaign.
    Fuzz(FuzzArgs),
    /// Emit diag(1/n, …, 1/n, 0, …) and tabulate λ along n = 1, 2, 4, …, 64.
    Counterexample(CounterexampleArgs),
}

#[derive(Debug, Args)]
pub struct LambdaArgs {
    pub input: PathBuf,
    /// Unit ball; defaults to the trace norm.
    #[arg(long, value_enum, conflicts_with = "p")]
    pub norm: Option<NormArg>,
    /// Schatten index in [1, ∞]; `inf` selects the operator norm.
    #[arg(long)]
    pub p: Option<f64>,
    /// Include an attaining decomposition.
    #[arg(long)]
    pub witness: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DecomposeMode {
    Attaining,
    Greedy,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = DecomposeMode::Attaining)]
    pub mode: DecomposeMode,
    /// The operator norm only supports the attaining mode.
    #[arg(long, value_enum, default_value_t = NormArg::Trace)]
    pub norm: NormArg,
}

#[derive(Debug, Args)]
pub struct MinimizeArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub t: f64,
    #[arg(long, default_value_t = 1.0)]
    pub p: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyKind {
    Mirsky,
    Markus,
    Wielandt,
    LambdaOracle,
    MinRankOne,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub kind: VerifyKind,
    /// Matrix files (two for mirsky and markus, one otherwise).
    pub inputs: Vec<PathBuf>,
    /// Draw seeded random inputs instead of reading files.
    #[arg(long, conflicts_with = "inputs")]
    pub random: bool,
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long)]
    pub trials: Option<u64>,
    /// Schatten index; all of the kind's default indices when omitted.
    #[arg(long)]
    pub p: Option<f64>,
    /// Weight for min-rank-one on a file input.
    #[arg(long)]
    pub t: Option<f64>,
    /// Ball for lambda-oracle.
    #[arg(long, value_enum, default_value_t = NormArg::Trace)]
    pub norm: NormArg,
    /// Sampled partial isometries per min-rank-one check.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct FuzzArgs {
    /// mirsky, markus, markus-singular, lambda-trace, lambda-operator,
    /// min-rank-one or orthogonal-additivity.
    pub kind: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub trials: u64,
    /// Sampled partial isometries per min-rank-one trial.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct CounterexampleArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub dim: Option<usize>,
    /// Write the matrix here instead of embedding it in the report.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
