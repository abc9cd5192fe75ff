//! Command-line harness: suites of checked claims, a disk cache of built
//! modules, and table/JSON/CSV reporting.

pub mod cache;
pub mod cli;
pub mod config;
pub mod report;
pub mod suites;

pub use cli::run;
