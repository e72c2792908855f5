use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "pelwedge",
    version,
    about = "Verification suites and tables for exterior powers of skew-Hermitian lattices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Print a table.
    Table(TableArgs),
    /// Check the integral-model hypotheses for an input file.
    Spadesuit(SpadesuitArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Data,
    Prinz,
    Vdrei,
    Vzehn,
    Embedding,
    Similitude,
    Positivity,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Signatures,
    Traces,
    Weights,
    EmbeddingMatrix,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Aligned text for terminals.
    #[default]
    Text,
    Csv,
    /// Newline-delimited JSON records.
    Records,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum RingKind {
    #[default]
    Symbolic,
    Rational,
    Modp,
}

#[derive(Clone, Debug, Default, Args)]
pub struct Common {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub m: Option<u64>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub l: Option<u64>,
    /// Working precision in bits (default: $PELWEDGE_PRECISION or 128).
    #[arg(long)]
    pub precision: Option<usize>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
}

#[derive(Clone, Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Coefficient ring for the vzehn suite.
    #[arg(long, value_enum, default_value_t = RingKind::Symbolic)]
    pub ring: RingKind,
    /// Exponent e of Z/p^e for `--ring modp`.
    #[arg(long, default_value_t = 3)]
    pub exponent: u32,
    /// Run sequentially instead of on the thread pool.
    #[arg(long)]
    pub sequential: bool,
    /// Print wall-clock timings in text output.
    #[arg(long)]
    pub timings: bool,
}

#[derive(Clone, Debug, Args)]
pub struct TableArgs {
    #[arg(value_enum)]
    pub kind: TableKind,
    #[command(flatten)]
    pub common: Common,
    /// Embedding case for the weights table: both, only0, onlyn, neither.
    #[arg(long)]
    pub case: Option<String>,
    /// Point of the unit ball, comma separated, e.g. `0.3,0.1+0.2i`.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
}

#[derive(Clone, Debug, Args)]
pub struct SpadesuitArgs {
    #[command(flatten)]
    pub common: Common,
}
