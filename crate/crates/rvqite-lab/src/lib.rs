//! Library surface of the `rvqite-lab` CLI: configuration, CSV output, and
//! the run engines behind each subcommand. The integration tests drive these
//! entry points directly; `main.rs` only parses arguments and dispatches.

pub mod config;
pub mod engine;
pub mod gnuplot;
pub mod output;
