//! Command-line front end for `qaccess-core`.
//!
//! Exit codes: 0 when every check passes, 1 when a certificate or
//! verification check fails, 2 for unusable input.

pub mod args;
pub mod commands;
pub mod format;
pub mod input;

pub use args::{Cli, Command};
pub use commands::{run, CliError, EXIT_INPUT, EXIT_PASS, EXIT_VIOLATION};
