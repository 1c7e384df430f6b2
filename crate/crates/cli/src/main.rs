//! `spiked-clt`: Gaussian-limit parameters, Monte Carlo checks, test power
//! curves and numerical self-tests for spiked Hermitian ensembles.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;

/// Failure classes, mapped to the process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad or inconsistent input, unwritable output (exit 2).
    Validation(String),
    /// Quadrature, eigensolver or self-test failure (exit 3).
    Numerical(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "invalid input: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl From<spiked_clt::Error> for CliError {
    fn from(e: spiked_clt::Error) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Validation(e.to_string())
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("spiked-clt: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
