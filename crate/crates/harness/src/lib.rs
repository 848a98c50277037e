//! Experiment harness for the group-marking schemes in `groupmark-core`.
//!
//! [`experiment`] replicates the simulated pipeline (population, grouping,
//! assessments, every selected scheme) in parallel with per-replicate
//! seeds; [`cohort`] reads and writes real cohorts as CSV directories; and
//! [`output`] renders the tidy result tables.

pub mod cohort;
pub mod config;
pub mod error;
pub mod experiment;
pub mod output;

pub use cohort::{export_replicate, ingest_and_mark, CohortData};
pub use config::{parse_schemes, ExperimentConfig};
pub use error::{HarnessError, Result};
pub use experiment::{
    run_replicate, run_scenario, simulate_replicate, sweep_group_size, sweep_population,
    MeanErrors, ReplicateInputs, ReplicateOutcome, ScenarioRun, SchemeOutcome, Sweep,
};
