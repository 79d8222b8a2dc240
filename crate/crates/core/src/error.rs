//! Error types shared across the crate.

use thiserror::Error;

/// A configuration was rejected before any simulation work started.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("item count must be at least 1, got {0}")]
    InvalidItemCount(usize),
    #[error("dimension must be at least 1, got {0}")]
    InvalidDimension(usize),
    #[error("standard deviation must be positive and finite, got {0}")]
    InvalidSigma(f64),
    #[error("noise standard deviation must be non-negative and finite, got {0}")]
    InvalidNoiseStd(f64),
    #[error("{name} must lie in [0, 1], got {value}")]
    GammaOutOfRange { name: &'static str, value: f64 },
    #[error("effect strengths must satisfy gamma_me + gamma_oc + gamma_ha <= 1, got {0}")]
    GammaSumExceedsOne(f64),
    #[error("discount delta must lie in [0, 1], got {0}")]
    InvalidDiscount(f64),
    #[error("softmax beta must be non-negative and finite, got {0}")]
    InvalidBeta(f64),
    #[error("constant policy index {index} out of range for catalog of {n} items")]
    ConstantIndexOutOfRange { index: usize, n: usize },
    #[error("step size alpha must be positive and finite, got {0}")]
    InvalidAlpha(f64),
    #[error("regularization eta must be non-negative and finite, got {0}")]
    InvalidEta(f64),
    #[error("baseline preference has {got} entries, expected dimension {expected}")]
    BaselineDimensionMismatch { expected: usize, got: usize },
    #[error("{0}")]
    Invalid(String),
}

/// A simulation run failed.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("invalid configuration: {0}")]
    Config(#[from] ConfigError),
    #[error("non-finite {quantity} at step {step}")]
    NonFinite { step: usize, quantity: &'static str },
}

/// A metric could not be computed from the given inputs.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricsError {
    #[error("trajectory log contains no interactions")]
    EmptyLog,
    #[error("window must be at least 1")]
    InvalidWindow,
    #[error("prominence fraction must lie in (0, 1), got {0}")]
    InvalidProminence(f64),
    #[error("target engagement {target} is infeasible for ratings in [{min}, {max}]")]
    InfeasibleTarget { target: f64, min: f64, max: f64 },
    #[error("bisection failed to meet tolerance; residual {residual}")]
    SolverDidNotConverge { residual: f64 },
    #[error("bound check requires a run without preference noise (pref_noise_std = {0})")]
    NoisyRun(f64),
    #[error("bound check requires gamma_me + gamma_oc + gamma_ha <= 1, got {0}")]
    UnboundedDynamics(f64),
    #[error("ratings list must not be empty")]
    EmptyRatings,
}
