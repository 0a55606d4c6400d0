//! Resumable, shardable verification runs with plain-text reports.

pub mod checkpoint;
pub mod report;
pub mod scenarios;
pub mod skeleton;

pub use checkpoint::{RunOptions, Shard};
pub use report::{ScenarioReport, Status};
pub use scenarios::{run, SCENARIOS};
