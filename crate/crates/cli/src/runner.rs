//! Drives an experiment manifest through the sweep engine and writes the
//! requested artifacts.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use prefloop_core::engine::{run_sweep_with, SimulationConfig, TrajectoryLog};

use crate::manifest::{expand, serialize_manifest, ExperimentManifest};
use crate::output::{self, SummaryRow};

/// Command-line overrides applied before expansion.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub out_dir: PathBuf,
    /// Worker count for the sweep; 0 means one per core.
    pub parallelism: usize,
    /// Replace the manifest's seed list with a single seed.
    pub seed_override: Option<u64>,
    /// Replace the base config's step count.
    pub steps_override: Option<usize>,
}

/// What an experiment produced.
#[derive(Debug)]
pub struct ExperimentReport {
    pub out_dir: PathBuf,
    pub rows: Vec<SummaryRow>,
    pub failures: usize,
    pub files: Vec<PathBuf>,
}

fn trajectory_filename(name: &str, config_id: &str, seed: u64) -> String {
    format!("{name}__{config_id}__seed{seed}.csv")
}

/// Run every (config, seed) cell of the manifest, writing trajectory CSVs
/// per run plus a combined summary and plot-data table. Per-run failures
/// are recorded in the report, not raised.
pub fn run_experiment(
    manifest: &ExperimentManifest,
    opts: &RunOptions,
) -> anyhow::Result<ExperimentReport> {
    let mut manifest = manifest.clone();
    if let Some(steps) = opts.steps_override {
        manifest.base.steps = steps;
    }
    if let Some(seed) = opts.seed_override {
        manifest.seeds = vec![seed];
    }
    let runs = expand(&manifest)?;
    let seeds = manifest.seeds.clone();
    let echo = serialize_manifest(&manifest)?;

    let out_dir = opts.out_dir.join(&manifest.name);
    fs::create_dir_all(&out_dir)
        .with_context(|| format!("creating output directory {}", out_dir.display()))?;

    let grid: Vec<SimulationConfig> = runs.iter().map(|r| r.config.clone()).collect();
    let write_trajectories = manifest.outputs.trajectories;
    let name = manifest.name.clone();
    let out_dir_ref: &Path = &out_dir;
    let runs_ref = &runs;
    let sink = move |config_index: usize, seed: u64, log: &TrajectoryLog| -> Result<(), String> {
        if !write_trajectories {
            return Ok(());
        }
        let path = out_dir_ref.join(trajectory_filename(
            &name,
            &runs_ref[config_index].config_id,
            seed,
        ));
        output::write_trajectory(&path, log).map_err(|e| format!("writing {}: {e}", path.display()))
    };

    let cells = run_sweep_with(&grid, &seeds, opts.parallelism, &sink);

    let rows: Vec<SummaryRow> = cells
        .into_iter()
        .map(|cell| SummaryRow {
            config_id: runs[cell.config_index].config_id.clone(),
            seed: cell.seed,
            outcome: cell.outcome,
        })
        .collect();
    let failures = rows.iter().filter(|r| r.outcome.is_err()).count();

    let mut files = Vec::new();
    if manifest.outputs.trajectories {
        for row in &rows {
            if row.outcome.is_ok() {
                files.push(out_dir.join(trajectory_filename(
                    &manifest.name,
                    &row.config_id,
                    row.seed,
                )));
            }
        }
    }
    if manifest.outputs.summary {
        let path = out_dir.join("summary.csv");
        output::write_summary(&path, &echo, &rows)
            .with_context(|| format!("writing {}", path.display()))?;
        files.push(path);
    }
    if manifest.outputs.plot_data {
        let path = out_dir.join("plot_data.csv");
        output::write_plot_data(&path, &echo, &rows)
            .with_context(|| format!("writing {}", path.display()))?;
        files.push(path);
    }

    Ok(ExperimentReport {
        out_dir,
        rows,
        failures,
        files,
    })
}
