//! Command-line front end: point evaluation, tables and self-tests.

pub mod commands;
pub mod config;
pub mod format;
pub mod selftest;

pub use commands::{cmd_eval, cmd_table, Status};
pub use config::{ConfigArgs, RunConfig};
pub use selftest::{cmd_selftest, GoldenSource};
