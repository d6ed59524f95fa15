//! Command-line laboratory for Unruh–DeWitt detector amplitudes.
//!
//! Every subcommand reads one JSON run configuration, computes through the
//! core library, and writes machine-readable artifacts (CSV or JSON) into an
//! output directory.  Each artifact embeds the fully resolved configuration
//! so a run can be audited and replayed from the artifact alone.
//!
//! Exit codes: `0` success, `2` invalid configuration or parameters (the
//! message names the offending field), `3` I/O failure, `4` the computation
//! ran but produced no usable result.

mod commands;
mod config;
mod output;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Artifact serialization format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Comma-separated tables with a `#`-prefixed config line.
    Csv,
    /// A single pretty-printed JSON document per artifact.
    Json,
}

/// Command-line arguments; flags are global so they may follow the
/// subcommand.
#[derive(Debug, Parser)]
#[command(
    name = "unruh-lab",
    version,
    about = "Numerical laboratory for acceleration-induced transparency \
             and thermal detector response"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// JSON run configuration; built-in defaults apply when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Directory artifacts are written into (created if missing).
    #[arg(long, global = true, value_name = "DIR", default_value = ".")]
    pub out: PathBuf,
    /// Worker threads for grid evaluation; falls back to the
    /// `UNRUH_LAB_THREADS` environment variable, then to all available
    /// cores.
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,
    /// Override the adiabatic damping rate for this run.
    #[arg(long, global = true, value_name = "F")]
    pub epsilon: Option<f64>,
    /// Artifact format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

/// The five laboratory operations.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate both amplitudes over a detector-gap grid.
    Scan,
    /// Search the (s1, T2) plane for points where the rotating-wave
    /// amplitude vanishes.
    FindTransparency,
    /// Recover the worldline of a phase function and verify its identities.
    Reconstruct,
    /// Excitation probability of the detector against a chosen field state.
    Probability,
    /// Measure the detailed-balance ratio across a gap grid and fit the
    /// thermal slope.
    UnruhCheck,
}

/// Failure modes mapped onto the exit-code contract.
#[derive(Debug)]
pub enum AppError {
    /// Bad configuration or parameter domain; exit 2.
    Validation(String),
    /// Filesystem failure; exit 3.
    Io(String),
    /// The computation ran but produced no usable result; exit 4.
    NoResult(String),
}

impl AppError {
    /// The documented exit code for this failure class.
    pub fn exit_code(&self) -> u8 {
        match self {
            AppError::Validation(_) => 2,
            AppError::Io(_) => 3,
            AppError::NoResult(_) => 4,
        }
    }
}

impl fmt::Display for AppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AppError::Validation(msg) => write!(f, "invalid run: {msg}"),
            AppError::Io(msg) => write!(f, "i/o failure: {msg}"),
            AppError::NoResult(msg) => write!(f, "no result: {msg}"),
        }
    }
}

impl std::error::Error for AppError {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
