//! Library side of the `sun2` command: run configuration and the commands
//! themselves, kept apart from argument parsing so tests can drive them.

pub mod commands;
pub mod config;

pub use commands::{exit_code, CliError};
pub use config::{ConfigError, Resolved, RunConfig};
