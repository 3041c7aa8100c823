//! `sparsegab`: constrained Gabidulin codes over Q(ζ_p) from the command line.
//!
//! Exit status: 0 on success or when the condition holds, 1 when it fails or
//! a certificate does not pass, 2 on bad usage or input.

mod commands;
mod config;

use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::JobArgs;

#[derive(Debug, Parser)]
#[command(
    name = "sparsegab",
    version,
    about = "Gabidulin codes with prescribed zeros over Q(ζ_p)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the intersection condition on a zero pattern and report ℓ.
    Check(JobArgs),
    /// Build a generator matrix with the given zeros and certify it.
    Construct(JobArgs),
    /// Best-distance subcode for a pattern that may violate the condition.
    Subcode(JobArgs),
    /// Re-certify a saved construction.
    Certify {
        #[command(flatten)]
        job: JobArgs,
        /// A result.json written by `construct`.
        #[arg(long, value_name = "FILE")]
        result: PathBuf,
    },
    /// Decide whether the zero pattern's polynomial determinant is nonzero.
    Oracle {
        #[command(flatten)]
        job: JobArgs,
        /// Tabulate agreement with the condition over every completed pattern of size n x k.
        #[arg(long)]
        sweep: bool,
    },
    /// Sample-set size needed for a failure probability, or the bound for a given size.
    Bound(JobArgs),
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Refused(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn usage(e: impl Display) -> Self {
        Self::Usage(e.to_string())
    }

    pub fn failed(e: impl Display) -> Self {
        Self::Failed(e.to_string())
    }

    fn code(&self) -> u8 {
        match self {
            Self::Usage(_) => 2,
            Self::Refused(_) | Self::Failed(_) => 1,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Check(job) => commands::check(job),
        Command::Construct(job) => commands::construct_code(job),
        Command::Subcode(job) => commands::subcode(job),
        Command::Certify { job, result } => commands::certify(job, result),
        Command::Oracle { job, sweep } => commands::oracle(job, *sweep),
        Command::Bound(job) => commands::bound(job),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
