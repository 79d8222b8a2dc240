//! Experiment runner for the prefloop simulator: TOML manifests in, CSV
//! tables out, plus checked-in presets reproducing the standard figures.

pub mod manifest;
pub mod output;
pub mod presets;
pub mod runner;

pub use manifest::{expand, parse_manifest, serialize_manifest, ExperimentManifest};
pub use runner::{run_experiment, ExperimentReport, RunOptions};
