//! CLI error type with the process exit codes attached.

use std::fmt;

/// Exit code 2 for configuration/usage problems, 3 for a diverged
/// simulation, 1 for I/O failures.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    Diverged {
        t: f64,
        step: u64,
    },
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Parse { .. } => 2,
            CliError::Diverged { .. } => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "{msg}"),
            CliError::Parse {
                path,
                line,
                column,
                message,
            } => {
                write!(
                    f,
                    "{path}: parse error at line {line} column {column}: {message}"
                )
            }
            CliError::Diverged { t, step } => {
                write!(f, "simulation diverged at t = {t} (step {step})")
            }
            CliError::Io(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<nlflux::Error> for CliError {
    fn from(e: nlflux::Error) -> Self {
        match e {
            nlflux::Error::Diverged { t, step, .. } => CliError::Diverged { t, step },
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
