//! Corpus, seeded sweeps, falsification search and reports.

pub mod config;
pub mod corpus;
pub mod explain;
pub mod report;
pub mod suite;

pub use config::{ConfigError, SuiteConfig};
pub use corpus::{corpus, CorpusEntry};
pub use explain::explain;
pub use report::{InstanceRecord, SuiteReport, Summary};
pub use suite::{falsify, falsify_sweep, run_suite, sweep, Target};
