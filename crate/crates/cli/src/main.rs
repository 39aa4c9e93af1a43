mod bench;
mod frlp;
mod gen;
mod solve;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use thiserror::Error;

#[derive(Debug, Parser)]
#[command(name = "facloc", version, about = "Facility location solvers, LP bounds and factor-revealing programs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve an instance file and print the cost breakdown.
    Solve(solve::SolveArgs),
    /// Run a batch of random instances and report mean ratios to the LP bound.
    Bench(bench::BenchArgs),
    /// Solve a factor-revealing program.
    Frlp(frlp::FrlpArgs),
    /// Generate an instance in native format.
    Gen(gen::GenArgs),
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] facloc::Error),
    #[error("{flag}: {source}")]
    Flag {
        flag: &'static str,
        #[source]
        source: facloc::Error,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("internal check failed: {0}")]
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        let core = match self {
            CliError::Core(e) | CliError::Flag { source: e, .. } => e,
            CliError::Io { .. } | CliError::Internal(_) => return 1,
        };
        match core {
            facloc::Error::Parse { .. } | facloc::Error::Structural(_) => 2,
            facloc::Error::Parameter(_) | facloc::Error::TooLarge(_) => 3,
            facloc::Error::Solver(_) | facloc::Error::Generation(_) => 1,
        }
    }
}

/// Attaches the flag name to a core error.
pub fn flag_err(flag: &'static str) -> impl FnOnce(facloc::Error) -> CliError {
    move |source| CliError::Flag { flag, source }
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(args) => solve::run(&args),
        Command::Bench(args) => bench::run(&args),
        Command::Frlp(args) => frlp::run(&args),
        Command::Gen(args) => gen::run(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
