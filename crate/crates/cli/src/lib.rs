//! Command-line front end for `repfn-core`: builds prefixes, runs the
//! verifications and density studies, and writes CSV or JSON reports.

pub mod commands;
pub mod config;
pub mod error;
pub mod hexmap;
pub mod output;
pub mod parallel;

pub use commands::run;
pub use config::RunConfig;
pub use error::{exit, CliError};
