//! Command-line front end: matrix files, the sweep CSV and the subcommands.

use std::fmt;
use std::io;
use std::path::Path;

pub mod commands;
pub mod format;
pub mod matrix_file;

pub use commands::{run, Cli, Context};

/// Environment variable overriding the exact-permanent term budget.
pub const BUDGET_ENV: &str = "PERMLAB_BUDGET_TERMS";

#[derive(Debug)]
pub enum CliError {
    /// Exit code 1: a mathematical self-check failed.
    CheckFailed(String),
    /// Exit code 2: unreadable or invalid input.
    Input(String),
    /// Exit code 3: the work exceeds the configured budget.
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::CheckFailed(_) => 1,
            CliError::Input(_) => 2,
            CliError::Budget(_) => 3,
        }
    }

    pub(crate) fn io(path: &Path, e: io::Error) -> Self {
        CliError::Input(format!("{}: {e}", path.display()))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::CheckFailed(m) | CliError::Input(m) | CliError::Budget(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<permlab_core::Error> for CliError {
    fn from(e: permlab_core::Error) -> Self {
        match e {
            permlab_core::Error::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl Context {
    /// Reads [`BUDGET_ENV`], falling back to the library default.
    pub fn from_env() -> Result<Self, CliError> {
        let budget = match std::env::var(BUDGET_ENV) {
            Ok(v) => {
                v.trim().parse().map_err(|_| CliError::Input(format!("{BUDGET_ENV}={v:?} is not a term count")))?
            }
            Err(_) => permlab_core::permanent::DEFAULT_BUDGET,
        };
        Ok(Context { budget })
    }
}
