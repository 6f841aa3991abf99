//! Command-line front end for `cpv-core`: JSON run configurations, CSV/JSON
//! outputs, experiment drivers and the verification suites.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod probe;
pub mod verify;

pub use error::CliError;
