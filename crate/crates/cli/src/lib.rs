//! Library behind the `nonmarkov` binary: config parsing, model assembly,
//! the analyze/sweep/check-cp pipelines, and CSV emission. Kept as a library
//! so integration and acceptance tests can drive the pipelines in-process.

pub mod config;
pub mod csv;
pub mod model;
pub mod run;
pub mod waveform;

/// Process exit codes shared by the binary and the tests.
pub mod exit {
    pub const OK: u8 = 0;
    pub const CONFIG: u8 = 2;
    pub const NUMERICAL: u8 = 3;
    pub const CP_VIOLATION: u8 = 4;
}

/// A pipeline failure carrying the exit code it should map to.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn config(message: impl Into<String>) -> Self {
        Self {
            code: exit::CONFIG,
            message: message.into(),
        }
    }

    pub fn numerical(message: impl Into<String>) -> Self {
        Self {
            code: exit::NUMERICAL,
            message: message.into(),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl std::error::Error for CliError {}

impl From<nonmarkov_core::CoreError> for CliError {
    fn from(e: nonmarkov_core::CoreError) -> Self {
        CliError::numerical(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError {
            code: exit::NUMERICAL,
            message: format!("i/o error: {e}"),
        }
    }
}
