//! `mixcorr` command-line front end.
//!
//! Exit codes: 0 success, 1 a validation check failed, 2 invalid or
//! unphysical parameters, 3 numerical failure in the discord optimizer.

mod commands;
mod config;
mod output;
mod validate;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::Figure;
use config::{RunArgs, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "mixcorr", version, about = "Two-qubit mixed states under XX Ising dynamics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Correlation report, eigenvalues and S_max check for one state.
    Info(RunArgs),
    /// Time sweep as CSV (or JSON).
    Evolve(RunArgs),
    /// Physical and Bell-violating φ windows of the ρᵐ family.
    Windows(RunArgs),
    /// Data series for one of the three figures, one file per series.
    Reproduce {
        #[arg(value_enum)]
        figure: Figure,
        #[command(flatten)]
        args: RunArgs,
    },
    /// Cross-module property checks.
    Validate(RunArgs),
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn invalid(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }

    pub fn numerical(message: impl Into<String>) -> Self {
        Self { code: 3, message: message.into() }
    }
}

impl From<mixcorr::Error> for Failure {
    fn from(e: mixcorr::Error) -> Self {
        let code = if e.is_invalid_input() { 2 } else { 3 };
        Self { code, message: e.to_string() }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Info(args) => commands::info(&RunConfig::resolve(args)?)?,
        Command::Evolve(args) => commands::evolve(&RunConfig::resolve(args)?)?,
        Command::Windows(args) => commands::windows(&RunConfig::resolve(args)?)?,
        Command::Reproduce { figure, args } => commands::reproduce(figure, &RunConfig::resolve(args)?)?,
        Command::Validate(args) => {
            if validate::run(&RunConfig::resolve(args)?) > 0 {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
