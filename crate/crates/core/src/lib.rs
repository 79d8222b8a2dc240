//! Deterministic closed-loop simulation of a recommender interacting with a
//! user whose preferences drift.
//!
//! At each round the recommender scores the fixed item catalog with an
//! estimate of the user's latent preference, selects an item under a
//! configurable policy, observes a (noisy) linear rating, refines its
//! estimate by online gradient descent, and the true preference then shifts
//! according to a convex combination of three update rules: drift toward
//! shown content (mere exposure), reinforcement scaled by a bounded surprise
//! term (operant conditioning), and decay toward a fixed baseline (hedonic
//! adaptation).
//!
//! Runs are reproducible: every randomness source draws from its own labeled
//! stream derived from the run seed. Parameter sweeps fan out over a rayon
//! pool when the `parallel` feature (on by default) is enabled and produce
//! results independent of scheduling.

pub mod dynamics;
pub mod engine;
pub mod error;
pub mod estimator;
pub mod metrics;
pub mod model;
pub mod policy;
pub mod rng;

pub use engine::{run_simulation, run_sweep, run_sweep_with, SimulationConfig, TrajectoryLog};
pub use error::{ConfigError, MetricsError, SimError};
pub use metrics::MetricSummary;
pub use model::ItemCatalog;
pub use policy::{PolicyConfig, PolicyKind};
pub use rng::RngStream;
