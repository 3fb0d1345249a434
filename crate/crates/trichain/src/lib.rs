//! Command-line front end and file formats for `trichain-core`.
//!
//! Every subcommand writes a `#! key=value` header with its effective
//! configuration, followed by CSV data (or a binary graymap for rasters).
//! Feeding such a file back through `--config` reproduces the run. Thread
//! count never affects output.

pub mod cli;
pub mod config;
pub mod format;
pub mod par;

use std::io;

/// Failure of a CLI run, mapped onto the process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// bad flags or config values
    #[error("usage: {0}")]
    Usage(String),
    /// reading config or writing output failed
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
    /// an analysis routine could not produce a result
    #[error("numerical failure: {0}")]
    Numerical(trichain_core::Error),
}

impl CliError {
    /// Process exit code: 2 usage, 3 I/O, 4 numerical.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
            CliError::Numerical(_) => 4,
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => CliError::Io(io),
            other => CliError::Io(io::Error::other(format!("{other:?}"))),
        }
    }
}

/// Result alias for the CLI.
pub type Result<T> = std::result::Result<T, CliError>;
