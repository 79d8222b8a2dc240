//! The closed simulation loop: score, select, rate, estimate, update.
//!
//! A run is fully determined by its configuration (including the seed).
//! Each randomness source draws from its own labeled stream, so toggling
//! one source never perturbs the others. Sweeps over (config, seed) grids
//! run each cell independently; with the `parallel` feature they fan out
//! over a rayon pool, and results are identical regardless of parallelism.

use serde::{Deserialize, Serialize};

use crate::dynamics::{composite_update_with_baseline, BaselineTracker, DynamicsConfig};
use crate::error::{ConfigError, SimError};
use crate::estimator::{ogd_update, sample_initial_estimate, EstimatorConfig, EstimatorState};
use crate::metrics::{summarize, MetricSummary};
use crate::model::{
    dot, norm, rate, sample_catalog, sample_initial_preference, stream, InteractionHistory,
    InteractionRecord, ItemCatalog, PreferenceState,
};
use crate::policy::{
    score_items_into, select_constant, select_greedy, select_persistent_softmax, select_softmax,
    select_uniform, PolicyConfig, PolicyKind, ScoreVector,
};
use crate::rng::RngStream;

/// Everything a run needs: population shape, horizon, dynamics, policy,
/// estimator, noise, and the seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationConfig {
    /// Catalog size.
    pub n: usize,
    /// Latent dimension.
    pub d: usize,
    /// Std of the Gaussian used to sample items, the initial preference,
    /// and the initial estimate.
    #[serde(default = "default_sigma")]
    pub sigma: f64,
    /// Number of interaction rounds T.
    pub steps: usize,
    /// Std of the observation noise added to ratings.
    #[serde(default = "default_rating_noise_std")]
    pub rating_noise_std: f64,
    /// Fixed adaptation baseline; defaults to the initial preference.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub baseline: Option<Vec<f64>>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub dynamics: DynamicsConfig,
    pub policy: PolicyConfig,
    #[serde(default)]
    pub estimator: EstimatorConfig,
}

fn default_sigma() -> f64 {
    1.0
}

fn default_rating_noise_std() -> f64 {
    0.05
}

impl SimulationConfig {
    /// A minimal config for the given shape; softmax(1) policy, defaults
    /// elsewhere.
    pub fn new(n: usize, d: usize, steps: usize) -> Self {
        Self {
            n,
            d,
            sigma: default_sigma(),
            steps,
            rating_noise_std: default_rating_noise_std(),
            baseline: None,
            seed: 0,
            dynamics: DynamicsConfig::default(),
            policy: PolicyConfig::softmax(1.0),
            estimator: EstimatorConfig::default(),
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.n < 1 {
            return Err(ConfigError::InvalidItemCount(self.n));
        }
        if self.d < 1 {
            return Err(ConfigError::InvalidDimension(self.d));
        }
        if !(self.sigma.is_finite() && self.sigma > 0.0) {
            return Err(ConfigError::InvalidSigma(self.sigma));
        }
        if !(self.rating_noise_std.is_finite() && self.rating_noise_std >= 0.0) {
            return Err(ConfigError::InvalidNoiseStd(self.rating_noise_std));
        }
        if let Some(b) = &self.baseline {
            if b.len() != self.d {
                return Err(ConfigError::BaselineDimensionMismatch {
                    expected: self.d,
                    got: b.len(),
                });
            }
            if b.iter().any(|x| !x.is_finite()) {
                return Err(ConfigError::Invalid(
                    "baseline has non-finite entries".into(),
                ));
            }
        }
        self.dynamics.validate()?;
        self.policy.validate(self.n)?;
        self.estimator.validate()?;
        Ok(())
    }
}

/// Full per-step record of a run: preference and estimate snapshots for
/// t = 0..=steps, and the selection/rating stream for t = 1..=steps.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryLog {
    pub config: SimulationConfig,
    pub catalog: ItemCatalog,
    /// True preference snapshots, `steps + 1` entries including t = 0.
    pub preferences: Vec<Vec<f64>>,
    /// Estimate snapshots aligned with `preferences`; equals the true
    /// preference at every step in oracle mode.
    pub estimates: Vec<Vec<f64>>,
    pub selections: Vec<usize>,
    pub ratings: Vec<f64>,
    pub noiseless_ratings: Vec<f64>,
    /// Predicted score of the selected item at each step.
    pub selected_scores: Vec<f64>,
}

impl TrajectoryLog {
    pub fn steps(&self) -> usize {
        self.selections.len()
    }

    pub fn dim(&self) -> usize {
        self.config.d
    }

    pub fn initial_preference(&self) -> &[f64] {
        &self.preferences[0]
    }

    /// Rebuild the interaction history the dynamics saw.
    pub fn history(&self) -> InteractionHistory {
        let mut h = InteractionHistory::new();
        for (i, &item_index) in self.selections.iter().enumerate() {
            h.push(InteractionRecord {
                step: i + 1,
                item_index,
                rating: self.ratings[i],
                noiseless_rating: self.noiseless_ratings[i],
            });
        }
        h
    }
}

/// A configured run, ready to execute. Use this instead of
/// [`run_simulation`] when the initial estimate must be pinned (e.g. to the
/// true initial preference).
pub struct Simulation {
    config: SimulationConfig,
    catalog: ItemCatalog,
    preference: PreferenceState,
    estimate: EstimatorState,
}

impl Simulation {
    pub fn new(config: SimulationConfig) -> Result<Self, SimError> {
        config.validate()?;
        let seed = config.seed;
        let catalog = sample_catalog(
            config.n,
            config.d,
            config.sigma,
            &mut RngStream::new(seed, stream::CATALOG),
        )?;
        let mut preference = sample_initial_preference(
            config.d,
            config.sigma,
            &mut RngStream::new(seed, stream::INITIAL_PREF),
        )?;
        if let Some(baseline) = &config.baseline {
            preference.baseline = baseline.clone();
        }
        // Oracle mode never reads the estimate, but sampling it anyway keeps
        // the struct uniform; it comes from its own stream either way.
        let estimate = sample_initial_estimate(
            config.d,
            config.sigma,
            &config.estimator,
            &mut RngStream::new(seed, stream::ESTIMATE_INIT),
        )?;
        Ok(Self {
            config,
            catalog,
            preference,
            estimate,
        })
    }

    pub fn catalog(&self) -> &ItemCatalog {
        &self.catalog
    }

    pub fn initial_preference(&self) -> &PreferenceState {
        &self.preference
    }

    /// Override the sampled initial estimate.
    pub fn set_initial_estimate(&mut self, u: Vec<f64>) {
        assert_eq!(u.len(), self.config.d, "dimension mismatch");
        self.estimate.u = u;
    }

    pub fn run(self) -> Result<TrajectoryLog, SimError> {
        let Simulation {
            config,
            catalog,
            mut preference,
            mut estimate,
        } = self;
        let steps = config.steps;
        let oracle = config.estimator.oracle;
        let needs_scores = config.policy.needs_scores();
        let persistent = config.policy.kind == PolicyKind::PersistentSoftmax;

        let mut rng_rating = RngStream::new(config.seed, stream::RATING_NOISE);
        let mut rng_pref = RngStream::new(config.seed, stream::PREF_NOISE);
        let mut rng_policy = RngStream::new(config.seed, stream::POLICY);

        let mut preferences = Vec::with_capacity(steps + 1);
        let mut estimates = Vec::with_capacity(steps + 1);
        let mut selections = Vec::with_capacity(steps);
        let mut ratings = Vec::with_capacity(steps);
        let mut noiseless_ratings = Vec::with_capacity(steps);
        let mut selected_scores = Vec::with_capacity(steps);

        preferences.push(preference.pi.clone());
        estimates.push(if oracle {
            preference.pi.clone()
        } else {
            estimate.u.clone()
        });

        let mut baseline_tracker = BaselineTracker::new(config.dynamics.discount_delta);
        let mut scores: ScoreVector = Vec::new();
        let mut prev_scoring_vec: Option<Vec<f64>> = None;

        for step in 1..=steps {
            let scoring_vec = if oracle { &preference.pi } else { &estimate.u };
            if needs_scores {
                score_items_into(scoring_vec, &catalog, &mut scores);
            }
            let item_index = match config.policy.kind {
                PolicyKind::Uniform => select_uniform(catalog.len(), &mut rng_policy),
                PolicyKind::Constant => select_constant(&config.policy),
                PolicyKind::Greedy => select_greedy(&scores, &mut rng_policy),
                PolicyKind::Softmax => select_softmax(
                    &scores,
                    config.policy.beta,
                    norm(scoring_vec),
                    &mut rng_policy,
                ),
                PolicyKind::PersistentSoftmax => select_persistent_softmax(
                    &scores,
                    config.policy.beta,
                    scoring_vec,
                    prev_scoring_vec.as_deref(),
                    &catalog,
                    config.policy.persistent_norm_scaling,
                    &mut rng_policy,
                ),
            };
            if persistent {
                prev_scoring_vec = Some(scoring_vec.clone());
            }

            let item = catalog.item(item_index);
            let rating = rate(&preference, item, config.rating_noise_std, &mut rng_rating);
            let predicted_score = if needs_scores {
                scores[item_index]
            } else {
                dot(scoring_vec, item)
            };

            if !oracle {
                estimate = ogd_update(&estimate, item, rating.observed, predicted_score);
            }

            // The baseline reflects interactions 1..step-1; the current
            // rating enters the tracker only after the preference update.
            let rating_baseline = baseline_tracker.baseline();
            preference = composite_update_with_baseline(
                &preference,
                item,
                rating.observed,
                rating_baseline,
                &config.dynamics,
                &mut rng_pref,
            );
            baseline_tracker.push(rating.observed);

            if !rating.observed.is_finite() {
                return Err(SimError::NonFinite {
                    step,
                    quantity: "rating",
                });
            }
            if preference.pi.iter().any(|x| !x.is_finite()) {
                return Err(SimError::NonFinite {
                    step,
                    quantity: "preference",
                });
            }
            if !oracle && estimate.u.iter().any(|x| !x.is_finite()) {
                return Err(SimError::NonFinite {
                    step,
                    quantity: "estimate",
                });
            }

            preferences.push(preference.pi.clone());
            estimates.push(if oracle {
                preference.pi.clone()
            } else {
                estimate.u.clone()
            });
            selections.push(item_index);
            ratings.push(rating.observed);
            noiseless_ratings.push(rating.noiseless);
            selected_scores.push(predicted_score);
        }

        Ok(TrajectoryLog {
            config,
            catalog,
            preferences,
            estimates,
            selections,
            ratings,
            noiseless_ratings,
            selected_scores,
        })
    }
}

/// Run one simulation from a config.
pub fn run_simulation(config: SimulationConfig) -> Result<TrajectoryLog, SimError> {
    Simulation::new(config)?.run()
}

/// Outcome of one sweep cell. Failures are recorded per cell and never
/// abort the rest of the sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepCell {
    /// Index into the sweep's config grid.
    pub config_index: usize,
    pub seed: u64,
    pub outcome: Result<MetricSummary, String>,
}

fn run_cell<F>(grid: &[SimulationConfig], config_index: usize, seed: u64, sink: &F) -> SweepCell
where
    F: Fn(usize, u64, &TrajectoryLog) -> Result<(), String> + Sync,
{
    let mut config = grid[config_index].clone();
    config.seed = seed;
    let outcome = run_simulation(config)
        .map_err(|e| e.to_string())
        .and_then(|log| {
            sink(config_index, seed, &log)?;
            Ok(summarize(&log))
        });
    SweepCell {
        config_index,
        seed,
        outcome,
    }
}

fn cell_indices(grid: &[SimulationConfig], seeds: &[u64]) -> Vec<(usize, u64)> {
    let mut cells = Vec::with_capacity(grid.len() * seeds.len());
    for config_index in 0..grid.len() {
        for &seed in seeds {
            cells.push((config_index, seed));
        }
    }
    cells
}

/// Sequential sweep over every (config, seed) pair, invoking `sink` on each
/// completed trajectory before it is summarized and dropped.
pub fn run_sweep_serial_with<F>(
    grid: &[SimulationConfig],
    seeds: &[u64],
    sink: &F,
) -> Vec<SweepCell>
where
    F: Fn(usize, u64, &TrajectoryLog) -> Result<(), String> + Sync,
{
    cell_indices(grid, seeds)
        .into_iter()
        .map(|(config_index, seed)| run_cell(grid, config_index, seed, sink))
        .collect()
}

/// Sequential sweep; results are in config-major, seed-minor order.
pub fn run_sweep_serial(grid: &[SimulationConfig], seeds: &[u64]) -> Vec<SweepCell> {
    run_sweep_serial_with(grid, seeds, &|_, _, _| Ok(()))
}

/// Sweep over every (config, seed) pair. `parallelism` caps the worker
/// count (0 means one worker per core); results are a pure function of the
/// cells, identical for any parallelism. Without the `parallel` feature
/// this falls back to the sequential path.
#[cfg(feature = "parallel")]
pub fn run_sweep_with<F>(
    grid: &[SimulationConfig],
    seeds: &[u64],
    parallelism: usize,
    sink: &F,
) -> Vec<SweepCell>
where
    F: Fn(usize, u64, &TrajectoryLog) -> Result<(), String> + Sync,
{
    use rayon::prelude::*;

    let cells = cell_indices(grid, seeds);
    let work = || {
        cells
            .par_iter()
            .map(|&(config_index, seed)| run_cell(grid, config_index, seed, sink))
            .collect()
    };
    if parallelism == 0 {
        work()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(parallelism)
            .build()
            .expect("failed to build sweep thread pool");
        pool.install(work)
    }
}

#[cfg(not(feature = "parallel"))]
pub fn run_sweep_with<F>(
    grid: &[SimulationConfig],
    seeds: &[u64],
    _parallelism: usize,
    sink: &F,
) -> Vec<SweepCell>
where
    F: Fn(usize, u64, &TrajectoryLog) -> Result<(), String> + Sync,
{
    run_sweep_serial_with(grid, seeds, sink)
}

/// [`run_sweep_with`] without a per-run sink.
pub fn run_sweep(grid: &[SimulationConfig], seeds: &[u64], parallelism: usize) -> Vec<SweepCell> {
    run_sweep_with(grid, seeds, parallelism, &|_, _, _| Ok(()))
}
