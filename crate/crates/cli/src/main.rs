//! `acgraph`: generate, certify, planarize and charge geometric graphs.
//!
//! Exit codes: 0 when every check passes, 2 when checks ran and found a
//! violation, 1 on errors and failed preconditions.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "acgraph", version, about = "Exact construction and verification of large-angle-crossing graphs")]
pub struct Cli {
    /// Precision for symbolic angles and flattening.
    #[arg(long, global = true, env = "AC_GRAPH_BITS", default_value_t = 64)]
    pub bits: u32,
    /// Add wall-clock time to the report (breaks byte-identical output).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a construction and write it as a graph document.
    Generate(GenerateArgs),
    /// Certify that every crossing meets an angle threshold.
    Verify(VerifyArgs),
    /// Planarize and report the faces.
    Planarize(PlanarizeArgs),
    /// Initial charges and the charge-sum identity.
    Charge(ChargeArgs),
    /// Discharge into 1-triangles and check the face inequalities.
    Discharge(DischargeArgs),
    /// Upper and lower bounds on the edge count for an angle.
    Bounds(BoundsArgs),
    /// Draw a graph, its planarization or its transfers.
    Svg(SvgArgs),
    /// Counts and the sharpest crossing.
    Stats(StatsArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Construction {
    Grid,
    Stacked,
    Lattice,
    Frame,
    Full,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub construction: Construction,
    #[arg(long)]
    pub t: Option<usize>,
    /// Angle slack, e.g. `1/5`.
    #[arg(long)]
    pub eps: Option<String>,
    #[arg(long)]
    pub r: usize,
    /// Height of the planes, or rows of the grid; defaults to `r`.
    #[arg(long)]
    pub k: Option<usize>,
    /// Project onto the plane with normal `(γ, γ, 1)`.
    #[arg(long)]
    pub gamma: Option<String>,
    /// Line family for `lattice`: axes, axes+diagonals, triangular, triangular-refined.
    #[arg(long, default_value = "axes")]
    pub lattice: String,
    /// Graph document path; without it the graph is printed.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Target angle, e.g. `pi/2` or `2pi/5 + 1/100`.
    #[arg(long)]
    pub alpha: String,
    /// Subtracted from `alpha`.
    #[arg(long)]
    pub eps: Option<String>,
    /// Also check the direction-bucket bound.
    #[arg(long)]
    pub uniform: bool,
    pub input: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PlanarizeArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ChargeArgs {
    pub input: PathBuf,
    /// Also check the right-angle face conditions.
    #[arg(long)]
    pub rac: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DischargeArgs {
    pub input: PathBuf,
    /// Angle the input is certified against; must exceed 2pi/5.
    #[arg(long, default_value = "2pi/5 + 1/1000")]
    pub alpha: String,
    /// Skip the precondition and report what the checks find.
    #[arg(long)]
    pub diagnostic: bool,
    /// Include the face sequence of every walk.
    #[arg(long)]
    pub trace: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub alpha: String,
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub markdown: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SvgMode {
    Graph,
    Planarization,
    Discharge,
}

#[derive(Debug, Args)]
pub struct SvgArgs {
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "graph")]
    pub mode: SvgMode,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(status) => ExitCode::from(status.exit_code()),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
