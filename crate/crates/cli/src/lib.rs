//! Workspace parsing, subcommands and reports for the `maclane-coh` binary.

pub mod commands;
pub mod report;
pub mod workspace;

pub use commands::{run, Cli, CliError, Outcome};
pub use report::{Body, Report};
pub use workspace::{parse_workspace, InputError, Workspace, SCHEMA};
