use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use symres::TwiceSpin;

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "symres",
    version,
    about = "Symmetry-resolved typical entanglement entropy"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Invariant dimension D_j, or the sector table for a cut.
    Dims(DimsArgs),
    /// Mean and standard deviation of the entropy for every subsystem size.
    PageCurve(PageCurveArgs),
    /// Sample random states and compare with the exact moments.
    Sample(SampleArgs),
    /// Exact against large-N mean entropy, plus coefficient tables.
    Asymptotics(AsymptoticsArgs),
    /// Entropies of the built-in example states against known values.
    Examples(OutputArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file. Defaults to <out-dir>/<command>.<ext>, else stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Directory for outputs when --output is not given.
    #[arg(long, env = "SYMRES_OUT_DIR")]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
#[group(id = "spin", required = true, multiple = false)]
pub struct SpinArg {
    /// Total spin, e.g. 1, 1.5 or 3/2.
    #[arg(long)]
    pub j: Option<TwiceSpin>,
    /// Twice the total spin.
    #[arg(long)]
    pub twice_j: Option<u32>,
}

impl SpinArg {
    pub fn get(&self) -> Result<TwiceSpin, CliError> {
        match (self.j, self.twice_j) {
            (Some(j), None) => Ok(j),
            (None, Some(t)) => Ok(TwiceSpin::new(t)),
            _ => Err(CliError::Invalid(
                "give exactly one of --j and --twice-j".into(),
            )),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct DimsArgs {
    #[arg(long)]
    pub n: u64,
    /// Subsystem size; omit for the bare invariant dimension.
    #[arg(long)]
    pub na: Option<u64>,
    #[command(flatten)]
    pub spin: SpinArg,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct PageCurveArgs {
    #[arg(long)]
    pub n: u64,
    #[command(flatten)]
    pub spin: SpinArg,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SampleArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub na: u64,
    #[command(flatten)]
    pub spin: SpinArg,
    #[arg(long, default_value_t = 10_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = symres::random_states::DEFAULT_BINS)]
    pub bins: usize,
    /// Worker threads; does not change the output.
    #[arg(long)]
    pub workers: Option<usize>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct AsymptoticsArgs {
    /// Subsystem fraction N_A/N.
    #[arg(long)]
    pub f: f64,
    /// Spin density 2j/N.
    #[arg(long)]
    pub s: f64,
    /// System sizes, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<u64>,
    #[command(flatten)]
    pub out: OutputArgs,
}
