//! CLI error classification: input/format problems exit 1, configuration
//! and usage problems exit 2.

use std::fmt;

#[derive(Debug)]
pub enum CliError {
    /// Unreadable or malformed data: missing input files, bad TSV, bad
    /// UTF-8, metric preconditions violated by the data.
    Input(String),
    /// Bad configuration: unparseable config file, unknown keys, missing
    /// config-referenced paths, invalid parameter combinations.
    Config(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Config(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) | CliError::Config(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for CliError {}

pub type Result<T> = std::result::Result<T, CliError>;

pub fn input_err(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

pub fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}
