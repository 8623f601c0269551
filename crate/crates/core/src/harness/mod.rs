//! Named, reproducible experiments and their JSON verdicts.

pub mod config;
pub mod experiments;
pub mod fixtures;
pub mod report;
pub mod verdict;

pub use config::{ConfigEcho, ExperimentConfig, ExperimentId, SampleSource};
pub use experiments::{all_passed, run, run_all, TopologyGapWitness};
pub use report::{RunReport, Summary};
pub use verdict::{Counterexample, Status, Verdict};
