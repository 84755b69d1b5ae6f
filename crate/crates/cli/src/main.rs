//! `hamembed`: embed, verify, anneal and run preparation protocols from the
//! command line.
//!
//! Exit status: 0 success, 1 verification or protocol failure, 2 usage or
//! parse error.

mod commands;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hamembed::dense::DEFAULT_CAP;
use hamembed::embedding::DEFAULT_BUDGET;

#[derive(Parser)]
#[command(name = "hamembed", version, about = "Ancilla embeddings of Pauli Hamiltonians")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eliminate one term by embedding into N + 1 qubits.
    Embed(EmbedArgs),
    /// Check an embedding report against its original Hamiltonian.
    Verify(VerifyArgs),
    /// Simulate an annealing run on a spin-glass instance.
    Anneal(AnnealArgs),
    /// Run the encode, evolve, decode pipeline from a config file.
    Protocol(ProtocolArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    Auto,
}

#[derive(Args)]
pub struct EmbedArgs {
    /// Hamiltonian file.
    #[arg(long)]
    pub input: PathBuf,
    /// Report path; stdout when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Term to eliminate: index into the normalized Hamiltonian, or its Pauli string.
    #[arg(long)]
    pub chi: String,
    #[arg(long, value_enum, default_value = "auto")]
    pub case: CaseArg,
    /// Factor mask for case 2, `bits` or `bits:axis`.
    #[arg(long)]
    pub mask: Option<String>,
    /// Qubit budget for the exhaustive mask search.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
    /// Also write the physical Hamiltonian on its own.
    #[arg(long)]
    pub physical: Option<PathBuf>,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Original Hamiltonian file.
    #[arg(long)]
    pub input: PathBuf,
    /// Embedding report produced by `embed`.
    #[arg(long)]
    pub embedding: PathBuf,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Elementwise matrix tolerance.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Pairwise tolerance for the sorted spectrum comparison.
    #[arg(long, default_value_t = 1e-9)]
    pub spectrum_tol: f64,
    /// Largest physical register to build densely.
    #[arg(long, default_value_t = DEFAULT_CAP, value_parser = parse_cap)]
    pub cap: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScheduleArg {
    Linear,
}

#[derive(Args)]
pub struct AnnealArgs {
    /// Spin-glass instance file.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value_t = hamembed::adiabatic::DEFAULT_TAU)]
    pub tau: f64,
    #[arg(long, default_value_t = hamembed::adiabatic::DEFAULT_STEPS)]
    pub steps: usize,
    #[arg(long, value_enum, default_value = "linear")]
    pub schedule: ScheduleArg,
    /// Uniform transverse field B of the standard driver.
    #[arg(long, default_value_t = 1.0)]
    pub field: f64,
    /// Add the flip-all term B0·X…X to the driver.
    #[arg(long)]
    pub flip_all: Option<f64>,
    /// Also run the N + 1 qubit embedded form and compare; needs --flip-all.
    #[arg(long, requires = "flip_all")]
    pub paired: bool,
    /// Schedule samples for the minimum-gap scan; 0 skips it.
    #[arg(long, default_value_t = 64)]
    pub gap_samples: usize,
    /// Allowed difference between paired success probabilities.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, default_value_t = DEFAULT_CAP, value_parser = parse_cap)]
    pub cap: usize,
}

#[derive(Args)]
pub struct ProtocolArgs {
    /// Protocol config file.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Overrides the config's `mode`.
    #[arg(long)]
    pub mode: Option<hamembed::protocol::Mode>,
    /// Overrides the config's `seed`.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Leakage threshold; overrides the config's `leakage_threshold`.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Also write the final system state as `bits re im` lines.
    #[arg(long)]
    pub state: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_CAP, value_parser = parse_cap)]
    pub cap: usize,
}

fn parse_cap(text: &str) -> Result<usize, String> {
    let cap: usize = text.parse().map_err(|_| format!("invalid qubit cap `{text}`"))?;
    if cap == 0 || cap > DEFAULT_CAP {
        return Err(format!("cap must be between 1 and {DEFAULT_CAP}"));
    }
    Ok(cap)
}

/// Failure classes mapped onto exit statuses.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unreadable or malformed inputs, refused sizes.
    Usage(anyhow::Error),
    /// The inputs were fine but a check or the protocol failed.
    Failure(anyhow::Error),
}

impl CliError {
    pub fn usage(e: impl Into<anyhow::Error>) -> Self {
        CliError::Usage(e.into())
    }

    pub fn failure(e: impl Into<anyhow::Error>) -> Self {
        CliError::Failure(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Embed(a) => commands::embed::run(&a),
        Command::Verify(a) => commands::verify::run(&a),
        Command::Anneal(a) => commands::anneal::run(&a),
        Command::Protocol(a) => commands::protocol::run(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failure(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
