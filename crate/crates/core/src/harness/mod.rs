//! Command-line plumbing: configuration, function files, suites and reports.

pub mod config;
pub mod ingest;
pub mod report;
pub mod suites;

pub use config::{Config, Overrides, CONFIG_ENV};
pub use ingest::{ingest_function, read_csv, read_json, write_function_csv, write_phase_csv, Ingested, InputFormat};
pub use report::{refs, CheckResult, ReportFormat, VerificationReport, TRACEABILITY};
pub use suites::{canonical_suite, run_suite, suites_for, SUITES};
