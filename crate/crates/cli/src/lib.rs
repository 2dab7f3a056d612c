//! Expression language and subcommands of the `partcalc` tool.

pub mod commands;
pub mod expr;

pub use commands::{run, Cli, Outcome};
