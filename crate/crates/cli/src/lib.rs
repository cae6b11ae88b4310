//! Command-line front end: data ingestion, configuration, the
//! analyze/simulate/report commands, and report emission.

pub mod commands;
pub mod config;
pub mod error;
pub mod format;
pub mod ingest;
pub mod manifest;
pub mod report;
pub mod svg;

pub use error::{CliError, Result};
