//! Command-line front end: graph ingestion, germ generators, report
//! emission in human-readable and machine-readable forms.

pub mod document;
pub mod report;

mod commands;

pub use commands::run;
