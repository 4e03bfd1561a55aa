//! Expression syntax, JSON formats and the command surface of the `intdiff`
//! binary.

pub mod commands;
pub mod expr;
pub mod json;

pub use commands::{execute, run, Cli, CliError, Command};
pub use expr::{eval, parse, Dialect, Expr};
