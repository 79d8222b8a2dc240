//! Online gradient descent estimator of the user preference.
//!
//! The recommender scores items with an estimate `u` and refines it after
//! each observed rating via OGD on the regularized squared loss
//! `l(u) = 0.5 * ((r - <u, v>)^2 + eta * ||u||^2)`, giving
//! `u' = (1 - alpha * eta) * u + alpha * (r - s) * v`.

use serde::{Deserialize, Serialize};

use crate::error::ConfigError;
use crate::rng::RngStream;

/// Estimator hyperparameters, exposed through the simulation config.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EstimatorConfig {
    /// OGD step size.
    pub alpha: f64,
    /// L2 regularization strength.
    pub eta: f64,
    /// Oracle mode: score with the true preference and skip estimation.
    pub oracle: bool,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        Self {
            alpha: 0.05,
            eta: 0.01,
            oracle: false,
        }
    }
}

impl EstimatorConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.alpha.is_finite() && self.alpha > 0.0) {
            return Err(ConfigError::InvalidAlpha(self.alpha));
        }
        if !(self.eta.is_finite() && self.eta >= 0.0) {
            return Err(ConfigError::InvalidEta(self.eta));
        }
        Ok(())
    }
}

/// The recommender's current estimate and its update hyperparameters.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimatorState {
    pub u: Vec<f64>,
    pub alpha: f64,
    pub eta: f64,
}

impl EstimatorState {
    pub fn new(u: Vec<f64>, alpha: f64, eta: f64) -> Result<Self, ConfigError> {
        let cfg = EstimatorConfig {
            alpha,
            eta,
            oracle: false,
        };
        cfg.validate()?;
        if u.iter().any(|x| !x.is_finite()) {
            return Err(ConfigError::Invalid(
                "estimate has non-finite entries".into(),
            ));
        }
        Ok(Self { u, alpha, eta })
    }

    pub fn dim(&self) -> usize {
        self.u.len()
    }
}

/// Sample the initial estimate `u_0 ~ N(0, sigma I_d)` from its own stream.
pub fn sample_initial_estimate(
    d: usize,
    sigma: f64,
    cfg: &EstimatorConfig,
    rng: &mut RngStream,
) -> Result<EstimatorState, ConfigError> {
    cfg.validate()?;
    if d < 1 {
        return Err(ConfigError::InvalidDimension(d));
    }
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(ConfigError::InvalidSigma(sigma));
    }
    let mut u = vec![0.0; d];
    rng.fill_normal(sigma, &mut u);
    Ok(EstimatorState {
        u,
        alpha: cfg.alpha,
        eta: cfg.eta,
    })
}

/// One OGD step. The caller supplies the score it already computed for the
/// recommended item, `predicted_score = <u, item>`.
pub fn ogd_update(
    state: &EstimatorState,
    item: &[f64],
    observed_rating: f64,
    predicted_score: f64,
) -> EstimatorState {
    assert_eq!(state.dim(), item.len(), "dimension mismatch");
    let shrink = 1.0 - state.alpha * state.eta;
    let gain = state.alpha * (observed_rating - predicted_score);
    let u = state
        .u
        .iter()
        .zip(item)
        .map(|(u_i, v_i)| shrink * u_i + gain * v_i)
        .collect();
    EstimatorState {
        u,
        alpha: state.alpha,
        eta: state.eta,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state(u: Vec<f64>, alpha: f64, eta: f64) -> EstimatorState {
        EstimatorState::new(u, alpha, eta).unwrap()
    }

    #[test]
    fn update_moves_along_residual() {
        let s = state(vec![0.0, 0.0], 0.1, 0.0);
        let next = ogd_update(&s, &[1.0, 0.0], 1.0, 0.0);
        assert_eq!(next.u, vec![0.1, 0.0]);
    }

    #[test]
    fn zero_residual_is_a_fixed_point_without_regularization() {
        let s = state(vec![1.0, 0.0], 0.1, 0.0);
        let next = ogd_update(&s, &[1.0, 0.0], 1.0, 1.0);
        assert_eq!(next.u, s.u);
    }

    #[test]
    fn regularized_update_example() {
        let s = state(vec![1.0, 1.0], 0.1, 0.5);
        let next = ogd_update(&s, &[0.0, 1.0], 2.0, 1.0);
        assert!((next.u[0] - 0.95).abs() < 1e-15);
        assert!((next.u[1] - 1.05).abs() < 1e-15);
    }

    #[test]
    fn update_equals_explicit_gradient_step() {
        // l(u) = 0.5 ((r - <u,v>)^2 + eta ||u||^2); compare against central
        // finite differences of the loss.
        let mut rng = RngStream::new(31, "estimate-init");
        for case in 0..20 {
            let d = 1 + case % 6;
            let u: Vec<f64> = (0..d).map(|_| rng.normal(0.0, 1.0)).collect();
            let v: Vec<f64> = (0..d).map(|_| rng.normal(0.0, 1.0)).collect();
            let r = rng.normal(0.0, 1.0);
            let alpha = 0.05;
            let eta = 0.3 * rng.uniform();
            let s = state(u.clone(), alpha, eta);
            let predicted = crate::model::dot(&u, &v);
            let next = ogd_update(&s, &v, r, predicted);

            let loss = |w: &[f64]| -> f64 {
                let resid = r - crate::model::dot(w, &v);
                0.5 * (resid * resid + eta * crate::model::dot(w, w))
            };
            let h = 1e-6;
            for i in 0..d {
                let mut plus = u.clone();
                plus[i] += h;
                let mut minus = u.clone();
                minus[i] -= h;
                let grad_fd = (loss(&plus) - loss(&minus)) / (2.0 * h);
                let grad_step = (u[i] - next.u[i]) / alpha;
                assert!(
                    (grad_fd - grad_step).abs() < 1e-5,
                    "case {case} coord {i}: fd {grad_fd} vs step {grad_step}"
                );
            }
        }
    }

    #[test]
    fn initial_estimate_is_deterministic() {
        let cfg = EstimatorConfig::default();
        let a =
            sample_initial_estimate(3, 1.0, &cfg, &mut RngStream::new(2, "estimate-init")).unwrap();
        let b =
            sample_initial_estimate(3, 1.0, &cfg, &mut RngStream::new(2, "estimate-init")).unwrap();
        assert_eq!(a, b);
    }
}
