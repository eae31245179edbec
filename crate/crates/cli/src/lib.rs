//! Driver behind the `qhyper` binary: resolves ids across the identity,
//! product, integral and classical registries, runs checks, and renders
//! versioned report files.

pub mod config;
pub mod report_file;
pub mod run;
pub mod targets;

pub use config::{Cli, RunConfig};
pub use report_file::ReportFile;
pub use run::{run, Outcome, RunError};
