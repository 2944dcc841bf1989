//! Error type shared by all modules.

use std::fmt;

/// Everything that can go wrong when configuring or running a simulation.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Invalid configuration: grids, scenarios, models that cannot be built.
    Config(String),
    /// A formula or operation was called with parameters outside its domain.
    Parameter(String),
    /// An API misuse, e.g. mixing a kernel with a grid of different spacing.
    Usage(String),
    /// A diagnostic could not be computed (e.g. no level crossing).
    Analysis(String),
    /// The state became non-finite during time stepping.
    Diverged { t: f64, step: u64, node: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Config(msg) => write!(f, "configuration error: {msg}"),
            Error::Parameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::Usage(msg) => write!(f, "usage error: {msg}"),
            Error::Analysis(msg) => write!(f, "analysis error: {msg}"),
            Error::Diverged { t, step, node } => write!(
                f,
                "simulation diverged: non-finite value at t = {t}, step {step}, node {node}"
            ),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
