//! Command-line front end for `ffblock`: problem file parsing, reports and subcommands.

pub mod app;
pub mod problem;
pub mod report;
