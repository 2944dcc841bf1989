//! Command-line front end for the nonlocal-flux simulation library.

pub mod commands;
pub mod config;
pub mod error;
pub mod jobs;
pub mod output;

pub use error::CliError;
