//! Command-line front end: group files, argument parsing and JSON reports.

pub mod args;
pub mod commands;
pub mod error;
pub mod groupfile;
pub mod report;

pub use args::Cli;
pub use commands::run;
pub use error::CliError;
