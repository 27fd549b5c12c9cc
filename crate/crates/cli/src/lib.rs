//! Library side of the `tck` binary: output formats, the sweep runner and
//! the subcommand bodies, kept here so they can be tested without spawning
//! a process.

pub mod commands;
pub mod error;
pub mod report;
pub mod sweep;
