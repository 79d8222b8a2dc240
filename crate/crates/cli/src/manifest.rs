//! Experiment manifests: a TOML document with a base simulation config,
//! optional sweep axes, seeds, and output switches.
//!
//! Unknown keys anywhere in the document are rejected, so typos surface as
//! parse errors naming the key. Axes expand as a cross product in a fixed
//! order; every expanded cell gets a stable, filename-safe config id.

use prefloop_core::engine::SimulationConfig;
use prefloop_core::error::ConfigError;
use prefloop_core::policy::{PolicyConfig, PolicyKind};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("manifest parse error: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("manifest serialize error: {0}")]
    Serialize(#[from] toml::ser::Error),
    #[error("config {config_id}: {source}")]
    InvalidConfig {
        config_id: String,
        source: ConfigError,
    },
    #[error("sweep expands to {got} runs, above the max_runs cap of {cap}")]
    TooManyRuns { got: usize, cap: usize },
    #[error("sweep produces duplicate config id `{0}`")]
    DuplicateConfigId(String),
    #[error("manifest name must not be empty")]
    EmptyName,
    #[error("seeds list must not be empty")]
    NoSeeds,
}

/// Which artifacts an experiment writes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    /// One CSV per (config, seed) with the full trajectory.
    pub trajectories: bool,
    /// One summary CSV row per (config, seed).
    pub summary: bool,
    /// Long-format plot table keyed by panel.
    pub plot_data: bool,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            trajectories: true,
            summary: true,
            plot_data: true,
        }
    }
}

/// Sweep axes. Each non-empty axis multiplies the grid; axes apply in the
/// declared field order, so a `beta` axis overrides the beta of a policy
/// swept via the `policy` axis.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepAxes {
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub policy: Vec<PolicyConfig>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub beta: Vec<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub gamma_me: Vec<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub gamma_oc: Vec<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub gamma_ha: Vec<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub delta: Vec<f64>,
}

impl SweepAxes {
    pub fn is_empty(&self) -> bool {
        self.policy.is_empty()
            && self.beta.is_empty()
            && self.gamma_me.is_empty()
            && self.gamma_oc.is_empty()
            && self.gamma_ha.is_empty()
            && self.delta.is_empty()
    }
}

/// A named experiment: base config, sweep axes, seeds, outputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentManifest {
    pub name: String,
    #[serde(default = "default_seeds")]
    pub seeds: Vec<u64>,
    /// Cap on configs x seeds after expansion.
    #[serde(default = "default_max_runs")]
    pub max_runs: usize,
    #[serde(default)]
    pub outputs: OutputConfig,
    #[serde(default, skip_serializing_if = "SweepAxes::is_empty")]
    pub sweep: SweepAxes,
    pub base: SimulationConfig,
}

fn default_seeds() -> Vec<u64> {
    vec![1]
}

fn default_max_runs() -> usize {
    4096
}

/// One expanded sweep cell: the resolved config and its stable id.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpandedRun {
    pub config_id: String,
    pub config: SimulationConfig,
}

/// Parse and validate a manifest. Every expanded config must pass core
/// validation and the run count must respect the cap.
pub fn parse_manifest(text: &str) -> Result<ExperimentManifest, ManifestError> {
    let manifest: ExperimentManifest = toml::from_str(text)?;
    expand(&manifest)?;
    Ok(manifest)
}

/// Serialize a manifest back to TOML.
pub fn serialize_manifest(manifest: &ExperimentManifest) -> Result<String, ManifestError> {
    Ok(toml::to_string(manifest)?)
}

fn fmt_axis_value(v: f64) -> String {
    format!("{v}")
}

fn policy_fragment(policy: &PolicyConfig, beta_axis_present: bool) -> String {
    let kind = match policy.kind {
        PolicyKind::Uniform => "uniform".to_string(),
        PolicyKind::Greedy => "greedy".to_string(),
        PolicyKind::Constant => format!("constant-i{}", policy.constant_index),
        PolicyKind::Softmax => "softmax".to_string(),
        PolicyKind::PersistentSoftmax => "psoftmax".to_string(),
    };
    let uses_beta = matches!(
        policy.kind,
        PolicyKind::Softmax | PolicyKind::PersistentSoftmax
    );
    if uses_beta && !beta_axis_present {
        format!("{kind}-b{}", fmt_axis_value(policy.beta))
    } else {
        kind
    }
}

/// Expand the sweep axes into the full config grid.
pub fn expand(manifest: &ExperimentManifest) -> Result<Vec<ExpandedRun>, ManifestError> {
    if manifest.name.trim().is_empty() {
        return Err(ManifestError::EmptyName);
    }
    if manifest.seeds.is_empty() {
        return Err(ManifestError::NoSeeds);
    }
    let sweep = &manifest.sweep;

    struct Partial {
        config: SimulationConfig,
        policy_swept: bool,
        fragments: Vec<String>,
    }
    let mut grid = vec![Partial {
        config: manifest.base.clone(),
        policy_swept: false,
        fragments: Vec::new(),
    }];

    // Scalar axes; (label, values, setter).
    type Setter = fn(&mut SimulationConfig, f64);
    let scalar_axes: [(&str, &Vec<f64>, Setter); 5] = [
        ("beta", &sweep.beta, |c, v| c.policy.beta = v),
        ("gamma_me", &sweep.gamma_me, |c, v| c.dynamics.gamma_me = v),
        ("gamma_oc", &sweep.gamma_oc, |c, v| c.dynamics.gamma_oc = v),
        ("gamma_ha", &sweep.gamma_ha, |c, v| c.dynamics.gamma_ha = v),
        ("delta", &sweep.delta, |c, v| c.dynamics.discount_delta = v),
    ];

    if !sweep.policy.is_empty() {
        grid = grid
            .into_iter()
            .flat_map(|p| {
                sweep.policy.iter().map(move |policy| Partial {
                    config: SimulationConfig {
                        policy: policy.clone(),
                        ..p.config.clone()
                    },
                    policy_swept: true,
                    fragments: p.fragments.clone(),
                })
            })
            .collect();
    }
    for (label, values, set) in scalar_axes {
        if values.is_empty() {
            continue;
        }
        grid = grid
            .into_iter()
            .flat_map(|p| {
                values.iter().map(move |&v| {
                    let mut config = p.config.clone();
                    set(&mut config, v);
                    let mut fragments = p.fragments.clone();
                    fragments.push(format!("{label}-{}", fmt_axis_value(v)));
                    Partial {
                        config,
                        policy_swept: p.policy_swept,
                        fragments,
                    }
                })
            })
            .collect();
    }

    let total = grid.len() * manifest.seeds.len();
    if total > manifest.max_runs {
        return Err(ManifestError::TooManyRuns {
            got: total,
            cap: manifest.max_runs,
        });
    }

    let beta_axis_present = !sweep.beta.is_empty();
    let mut runs = Vec::with_capacity(grid.len());
    let mut seen = std::collections::HashSet::new();
    for p in grid {
        let mut fragments = p.fragments;
        if p.policy_swept {
            fragments.insert(
                0,
                format!(
                    "policy-{}",
                    policy_fragment(&p.config.policy, beta_axis_present)
                ),
            );
        }
        let config_id = if fragments.is_empty() {
            "base".to_string()
        } else {
            fragments.join("__")
        };
        if !seen.insert(config_id.clone()) {
            return Err(ManifestError::DuplicateConfigId(config_id));
        }
        p.config
            .validate()
            .map_err(|source| ManifestError::InvalidConfig {
                config_id: config_id.clone(),
                source,
            })?;
        runs.push(ExpandedRun {
            config_id,
            config: p.config,
        });
    }
    Ok(runs)
}
