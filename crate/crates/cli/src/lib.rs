//! Command-line front end for `halin-book`: JSON documents, rendering and
//! the subcommands of the `halin-book` binary.

pub mod commands;
pub mod document;
pub mod render;

pub use commands::{run, Cli, CliError};
