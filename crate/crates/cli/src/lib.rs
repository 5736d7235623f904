//! Command-line front end: instance files, reports and fuzz campaigns.

pub mod cli;
pub mod error;
pub mod fuzz;
pub mod instance;
pub mod report;

pub use cli::{run, Cli, Command};
pub use error::CliError;
pub use fuzz::{run_fuzz, FuzzConfig, FuzzSummary};
pub use instance::{InstanceFile, Loaded};
pub use report::{ClassificationReport, Connection};
