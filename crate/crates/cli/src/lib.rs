//! Command-line driver for the `prm` library: code files, reports and
//! subcommands. The `prm` binary is a thin wrapper around [`commands::run`].

pub mod codefile;
pub mod commands;
pub mod report;
