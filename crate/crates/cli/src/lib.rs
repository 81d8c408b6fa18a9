//! Batch front end for `entrobox`: JSON state ingestion, seeded ensemble
//! generation and the randomized inequality suites behind the `entrobox`
//! binary.

pub mod checks;
pub mod config;
pub mod error;
pub mod eval;
pub mod io;
pub mod suite;

pub use config::{Suite, SuiteConfig};
pub use error::{CliError, Result};
pub use io::{
    generate_ensemble, ingest_density, ingest_prob_vec, ingest_state, DensityFile, InputState,
};
pub use suite::{run_suite, write_report, CheckAggregate, FailingInstance, RunReport};

/// Exit status when every check passed.
pub const EXIT_PASS: u8 = 0;
/// Exit status when at least one check failed.
pub const EXIT_FAIL: u8 = 1;
/// Exit status for unreadable or invalid input.
pub const EXIT_INPUT: u8 = 2;
