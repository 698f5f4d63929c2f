//! Experiment registry, configuration, execution and reports for the
//! numerical verification of monodromy identities of Hadamard products.

pub mod cache;
pub mod config;
pub mod error;
pub mod experiments;
pub mod registry;
pub mod report;

pub use config::{ExperimentConfig, ReportFormat};
pub use error::{LabError, LabResult};
pub use registry::{find, names, run_experiment, EXPERIMENTS};
pub use report::{emit_report, render, Case, Cx, Report};
