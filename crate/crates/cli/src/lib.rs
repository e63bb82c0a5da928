//! Verification driver behind the `hecke` binary.

pub mod config;
pub mod driver;
pub mod output;
pub mod tables;

use std::ffi::OsString;

use clap::Parser;
use thiserror::Error;

pub use config::{Cli, Command, Format, RunConfig, Suite, TableKind};
pub use driver::{verify, Report};
pub use tables::{table, TableReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] hecke_core::error::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Core(hecke_core::error::Error::CapExceeded { .. }) => EXIT_CAP,
            CliError::Core(_) | CliError::Io(_) => EXIT_FAIL,
        }
    }
}

fn verify_command(config: &RunConfig) -> Result<i32, CliError> {
    let report = verify(config)?;
    output::emit(&output::render_report(&report, config.format), config.out.as_deref())?;
    let s = &report.summary;
    if s.discrepancy > 0 {
        eprintln!("warning: {} check(s) found a printed formula disagreeing with the computed value", s.discrepancy);
    }
    for c in report.checks.iter().filter(|c| c.status == hecke_core::report::Status::Fail) {
        eprintln!("FAIL {}", c.check);
    }
    Ok(if !report.complete {
        EXIT_CAP
    } else if report.failed() || (config.strict && s.discrepancy > 0) {
        EXIT_FAIL
    } else {
        EXIT_OK
    })
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match &cli.command {
        Command::Verify { common, suite } => RunConfig::new(common, suite).and_then(|c| verify_command(&c)),
        Command::Table { what, common } => RunConfig::new(common, &[]).and_then(|c| {
            let t = table(&c, *what)?;
            output::emit(&output::render_table(&t, c.format), c.out.as_deref())?;
            Ok(EXIT_OK)
        }),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        e.exit_code()
    })
}
