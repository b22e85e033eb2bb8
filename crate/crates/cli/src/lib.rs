//! Config-driven scenario runner for the poisson-mech models.

pub mod config;
pub mod models;
pub mod run;
pub mod sweep;
pub mod table;

pub use config::{Model, OutputKind, ScenarioConfig};
pub use run::{run, Format, Manifest};
