//! Library side of the `hweno` command: configuration files and the
//! run/convergence/reference commands.

pub mod commands;
pub mod config;
pub mod error;

pub use config::RunConfig;
pub use error::{CliError, Result};
