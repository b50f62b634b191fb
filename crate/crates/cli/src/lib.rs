//! Scenario files, command dispatch and reports for `gck`.

pub mod codec;
pub mod commands;
pub mod report;
pub mod scenario;

pub use commands::{run, Command};
pub use report::{Check, CheckKind, Report, Status};
pub use scenario::{parse_scenario, parse_scenario_capped, Scenario, ScenarioError};
