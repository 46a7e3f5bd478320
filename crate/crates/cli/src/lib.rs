//! Text formats and subcommands for the `freeiso` binary.

pub mod commands;
pub mod text;

pub use commands::{run, verify_document, Cli, CliError, Command, Output};
