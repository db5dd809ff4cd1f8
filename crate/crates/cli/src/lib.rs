//! Command-line front end: argument definitions, command implementations and
//! report rendering. `main.rs` only parses, dispatches and sets the exit code.

mod commands;
mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fur_porac::porac::ParityConvention;

pub use commands::run;
pub use report::{round12, Provenance, ResultEntry, RunReport};

/// Default tolerance for comparisons against closed forms.
pub const ANALYTIC_TOL: f64 = 1e-9;
/// Default tolerance for Monte Carlo searches.
pub const SEARCH_TOL: f64 = 1e-3;
/// Environment variable holding the default oracle seed.
pub const SEED_ENV: &str = "PORAC_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "porac",
    version,
    about = "Fine-grained uncertainty bounds and PORAC simulations"
)]
pub struct Cli {
    /// Emit a single JSON object.
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// Emit CSV rows (name,value,provenance,exact).
    #[arg(long, global = true)]
    pub csv: bool,
    /// Cap on worker threads (default: logical cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Noncontextual, MUB and quantum bounds for the N→1 d-level game.
    Bounds(GameArgs),
    /// Exhaustive simulation of a strategy's success probability.
    Simulate(StrategyArgs),
    /// Measurement- and state-level parity-obliviousness audit.
    VerifyPo(VerifyArgs),
    /// Brute-force and Monte Carlo certification of the bounds.
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Args)]
pub struct GameArgs {
    /// Number of dits N.
    #[arg(long)]
    pub n: usize,
    /// Alphabet size d.
    #[arg(long)]
    pub d: usize,
    /// Comparison tolerance [default: 1e-9].
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyKind {
    /// Shift/clock encoding decoded in the computational and Fourier bases (N = 2).
    Paper2d,
    /// Cube-vertex qubit encoding decoded along x, y, z (N = 3, d = 2).
    Qubit3to1,
    /// Qubit encoding in the y-z plane (N = 2, d = 2).
    QubitYz,
    /// Leaky demo: encodes the sum of all dits in the computational basis.
    Naive,
}

#[derive(Debug, Clone, Args)]
pub struct StrategyArgs {
    #[command(flatten)]
    pub game: GameArgs,
    #[arg(long, value_enum, default_value = "paper2d")]
    pub strategy: StrategyKind,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub strategy: StrategyArgs,
    /// Parity vectors: `paper` (at most d-2 zeros) or `hamming2` (at least two nonzero dits).
    #[arg(long, default_value = "paper", value_parser = parse_convention)]
    pub convention: ParityConvention,
}

fn parse_convention(s: &str) -> Result<ParityConvention, String> {
    s.parse().map_err(|e: fur_porac::Error| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleTask {
    /// Maximum certainty over random pure states vs the general bound.
    Certainty,
    /// Maximum PORAC success over random decoders vs the quantum bound.
    Porac,
    /// Exhaustive unconstrained classical optimum vs the noncontextual bound.
    Classical,
    /// Summed Bloch-vector norms vs ((d-1)/(2d)) N d^N.
    Lemma3,
    /// Φ and the success it implies vs their Cauchy–Schwarz bounds.
    Phi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BasisChoice {
    /// The first N bases of the MUB family (prime d, or N ≤ 2).
    Mub,
    /// Haar-random bases drawn from the seed.
    Random,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    #[arg(long, value_enum)]
    pub task: OracleTask,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long, env = SEED_ENV, default_value_t = 0)]
    pub seed: u64,
    /// Random samples for the certainty and porac searches.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    /// Skip the hill-climb after sampling.
    #[arg(long)]
    pub no_refine: bool,
    /// Outcome vectors / bases for certainty, lemma3 and phi.
    #[arg(long, value_enum, default_value = "mub")]
    pub bases: BasisChoice,
    /// Comparison tolerance [default: 1e-3 for searches, 1e-9 otherwise].
    #[arg(long)]
    pub tol: Option<f64>,
}

impl Cli {
    pub fn render(&self, report: &RunReport) -> String {
        if self.json {
            let mut s = report.to_json();
            s.push('\n');
            s
        } else if self.csv {
            report.to_csv()
        } else {
            report.to_table()
        }
    }
}
