//! Command-line front end: file parsing, command dispatch and JSON/text reports.

pub mod commands;
pub mod format;
pub mod parse;

use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use connsum_core::homology::Field;
use serde::Serialize;

pub use parse::ParseError;

pub const SCHEMA: &str = "connsum-report/1";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Core(#[from] connsum_core::Error),
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Parser)]
#[command(name = "connsum", version, about = "Connected sums of simplicial complexes and their rings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Largest monomial degree to compute (deg x_i = 1; the t-grading doubles it)
    #[arg(long, global = true)]
    pub dmax: Option<usize>,
    /// Largest homological degree for Tor (default: number of rows of the matrix)
    #[arg(long, global = true)]
    pub pmax: Option<usize>,
    /// Coefficient field for Cohen-Macaulay and Gorenstein tests: Q or Fp:<p>
    #[arg(long, global = true, default_value = "Q", value_parser = parse_field)]
    pub field: Field,
    /// Seed for randomised commands
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Emit the JSON report (default)
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,
    /// Emit a human-readable report
    #[arg(long, global = true)]
    pub text: bool,
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse::<Field>().map_err(|e| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply one complex operation and print the result
    ComplexOp(ComplexOpArgs),
    /// Form K1 #^Z K2 and check the ring and Tor statements around it
    SumCheck(SumCheckArgs),
    /// Cut a simple polytope and check that both pieces give strong connected sums
    PolytopeCut(PolytopeCutArgs),
    /// Check the fiber-product and connected-sum sequences of Stanley-Reisner rings
    SrVerify(PairArgs),
    /// Compare the annihilator generators with the truncated kernel computation
    Annihilator(AnnihilatorArgs),
    /// Koszul Tor of Z[K] over the linear forms given by a matrix
    Tor(TorArgs),
    /// Cohen-Macaulay and Gorenstein verdicts, or the Gorenstein closure check for a sum
    Gorenstein(GorensteinArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ComplexOp {
    Union,
    Intersection,
    Closure,
    OpenNeighborhood,
    Star,
    Deletion,
    Link,
    StrongZ,
    ConnectedSum,
    Homology,
}

#[derive(Debug, Args)]
pub struct ComplexOpArgs {
    #[arg(long, value_enum)]
    pub op: ComplexOp,
    #[arg(long)]
    pub complex: PathBuf,
    /// Second complex for union, intersection, strong-z (as W) and connected-sum
    #[arg(long)]
    pub other: Option<PathBuf>,
    /// Face list Z such as "{5} {2,5}"
    #[arg(long)]
    pub faces: Option<String>,
    /// A single face such as "{1,2}" for link
    #[arg(long)]
    pub face: Option<String>,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[arg(long)]
    pub k1: PathBuf,
    #[arg(long)]
    pub k2: PathBuf,
    /// Face list Z; defaults to W \ closure(K1 \ W)
    #[arg(long)]
    pub z: Option<String>,
}

#[derive(Debug, Args)]
pub struct SumCheckArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    /// Matrix of linear forms; enables the Tor checks
    #[arg(long)]
    pub matrix: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["input", "random"])))]
pub struct PolytopeCutArgs {
    /// Polytope file with a `cut:` line
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Number of random polytopes and generic cuts to check
    #[arg(long)]
    pub random: Option<usize>,
    /// Dimension of the random polytopes (default: random in 1..=3)
    #[arg(long, requires = "random")]
    pub dim: Option<usize>,
}

#[derive(Debug, Args)]
pub struct AnnihilatorArgs {
    #[arg(long)]
    pub complex: PathBuf,
    /// Subcomplex W
    #[arg(long)]
    pub sub: PathBuf,
}

#[derive(Debug, Args)]
pub struct TorArgs {
    #[arg(long)]
    pub complex: PathBuf,
    #[arg(long)]
    pub matrix: PathBuf,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("target").required(true).args(["complex", "k1"])))]
pub struct GorensteinArgs {
    #[arg(long)]
    pub complex: Option<PathBuf>,
    #[arg(long, requires = "k2")]
    pub k1: Option<PathBuf>,
    #[arg(long, requires = "k1")]
    pub k2: Option<PathBuf>,
    #[arg(long, requires = "k1")]
    pub z: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Finding,
}

#[derive(Debug, Clone, Serialize)]
pub struct Params {
    pub d_max: Option<usize>,
    pub p_max: Option<usize>,
    pub field: String,
    pub seed: u64,
}

/// Versioned report envelope written to standard output.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: &'static str,
    pub status: Status,
    pub findings: Vec<String>,
    pub params: Params,
    pub result: serde_json::Value,
    #[serde(skip)]
    pub text: String,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => 0,
            Status::Finding => 1,
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("{}: {}\n", self.command, if self.status == Status::Pass { "pass" } else { "finding" });
        for f in &self.findings {
            out.push_str(&format!("finding: {f}\n"));
        }
        out.push_str(&self.text);
        out
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Runs one parsed invocation. Errors map to exit code 2.
pub fn run(cli: &Cli) -> Result<Report, CliError> {
    commands::dispatch(&cli.command, &cli.options)
}
