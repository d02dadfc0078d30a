//! The batch runner behind the `detvar` binary: argument types, report
//! assembly and the acceptance suite.

pub mod args;
pub mod commands;
pub mod report;
pub mod suite;

pub use commands::{run, Cli, Command};
pub use report::{CliError, Context, Outcome, RunReport};
