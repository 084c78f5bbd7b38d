//! Command-line front end: argument parsing, report envelopes and exit codes.

pub mod cli;
pub mod report;
pub mod run;

pub use cli::Cli;
pub use run::{execute, run, CliError, Output};
