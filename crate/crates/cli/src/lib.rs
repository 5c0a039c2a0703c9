//! Command-line front end of `klcells` and the acceptance suite it runs.

pub mod accept;
pub mod commands;
pub mod config;
pub mod output;

pub use commands::{execute, run, Cli, Command};
