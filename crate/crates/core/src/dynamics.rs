//! Preference-update rules: mere exposure, operant conditioning, hedonic
//! adaptation, and their convex combination.
//!
//! Each rule produces a delta `pi_{t+1} - pi_t`. The composite update adds
//! the active deltas plus optional per-coordinate Gaussian noise. Components
//! with zero strength contribute exactly zero and skip their computation, so
//! a fully static configuration leaves the preference bit-identical.

use serde::{Deserialize, Serialize};

use crate::error::ConfigError;
use crate::model::{InteractionHistory, PreferenceState};
use crate::rng::RngStream;

/// Direction convention for the surprise term.
///
/// `Narrative` treats ratings above the historical baseline as positive
/// surprise (content that is better than expected reinforces the item).
/// `Literal` flips the sign, i.e. baseline minus current rating.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurpriseSign {
    #[default]
    Narrative,
    Literal,
}

/// Range convention for the surprise term. `ScaledArctan` maps the rating
/// gap through (2/pi)*atan so the result stays in (-1, 1); `RawArctan`
/// leaves the plain atan, whose range is (-pi/2, pi/2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurpriseScale {
    #[default]
    ScaledArctan,
    RawArctan,
}

/// Strengths and conventions of the preference dynamics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DynamicsConfig {
    pub gamma_me: f64,
    pub gamma_oc: f64,
    pub gamma_ha: f64,
    /// Discount on past ratings when forming the operant-conditioning
    /// baseline; weight delta^tau on the rating tau steps back.
    pub discount_delta: f64,
    /// Std of the per-coordinate Gaussian noise added after the deltas.
    pub pref_noise_std: f64,
    pub surprise_sign: SurpriseSign,
    pub surprise_scale: SurpriseScale,
}

impl Default for DynamicsConfig {
    fn default() -> Self {
        Self {
            gamma_me: 0.0,
            gamma_oc: 0.0,
            gamma_ha: 0.0,
            discount_delta: 0.9,
            pref_noise_std: 0.01,
            surprise_sign: SurpriseSign::default(),
            surprise_scale: SurpriseScale::default(),
        }
    }
}

impl DynamicsConfig {
    /// A configuration with every effect and the preference noise turned off.
    pub fn static_user() -> Self {
        Self {
            pref_noise_std: 0.0,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        for (name, value) in [
            ("gamma_me", self.gamma_me),
            ("gamma_oc", self.gamma_oc),
            ("gamma_ha", self.gamma_ha),
        ] {
            if !(value.is_finite() && (0.0..=1.0).contains(&value)) {
                return Err(ConfigError::GammaOutOfRange { name, value });
            }
        }
        let sum = self.gamma_me + self.gamma_oc + self.gamma_ha;
        if sum > 1.0 {
            return Err(ConfigError::GammaSumExceedsOne(sum));
        }
        if !(self.discount_delta.is_finite() && (0.0..=1.0).contains(&self.discount_delta)) {
            return Err(ConfigError::InvalidDiscount(self.discount_delta));
        }
        if !(self.pref_noise_std.is_finite() && self.pref_noise_std >= 0.0) {
            return Err(ConfigError::InvalidNoiseStd(self.pref_noise_std));
        }
        Ok(())
    }

    pub fn gamma_sum(&self) -> f64 {
        self.gamma_me + self.gamma_oc + self.gamma_ha
    }
}

/// Contribution to `pi_{t+1} - pi_t` from a single effect.
pub type PreferenceDelta = Vec<f64>;

/// Mere exposure: move a gamma-fraction of the way toward the shown item,
/// `gamma * (item - pi)`.
pub fn mere_exposure_delta(pi: &[f64], item: &[f64], gamma: f64) -> PreferenceDelta {
    assert_eq!(pi.len(), item.len(), "dimension mismatch");
    pi.iter().zip(item).map(|(p, v)| gamma * (v - p)).collect()
}

/// Discount-weighted mean of past observed ratings, weight delta^tau on the
/// rating tau steps back. Conventions: empty history -> 0; delta = 0 -> the
/// most recent rating (the delta -> 0 limit); delta = 1 -> plain mean.
pub fn discounted_baseline(history: &InteractionHistory, delta: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&delta));
    let mut weighted_sum = 0.0;
    let mut weight_total = 0.0;
    let mut weight = delta;
    for record in history.records().iter().rev() {
        weighted_sum += weight * record.rating;
        weight_total += weight;
        weight *= delta;
    }
    if weight_total > 0.0 {
        weighted_sum / weight_total
    } else {
        history.last_rating().unwrap_or(0.0)
    }
}

/// Incremental form of [`discounted_baseline`] for O(1) per-step updates.
///
/// After pushing ratings r_1..r_k, `baseline()` equals
/// `discounted_baseline` over that history up to floating-point roundoff.
#[derive(Debug, Clone)]
pub struct BaselineTracker {
    delta: f64,
    weighted_sum: f64,
    weight_total: f64,
    last: Option<f64>,
}

impl BaselineTracker {
    pub fn new(delta: f64) -> Self {
        debug_assert!((0.0..=1.0).contains(&delta));
        Self {
            delta,
            weighted_sum: 0.0,
            weight_total: 0.0,
            last: None,
        }
    }

    pub fn push(&mut self, rating: f64) {
        self.weighted_sum = self.delta * (self.weighted_sum + rating);
        self.weight_total = self.delta * (self.weight_total + 1.0);
        self.last = Some(rating);
    }

    pub fn baseline(&self) -> f64 {
        if self.weight_total > 0.0 {
            self.weighted_sum / self.weight_total
        } else {
            self.last.unwrap_or(0.0)
        }
    }
}

/// Bounded transform of the gap between the current rating and the
/// historical baseline. Under the defaults the result lies in (-1, 1).
pub fn surprise(baseline: f64, current_rating: f64, cfg: &DynamicsConfig) -> f64 {
    let gap = match cfg.surprise_sign {
        SurpriseSign::Narrative => current_rating - baseline,
        SurpriseSign::Literal => baseline - current_rating,
    };
    match cfg.surprise_scale {
        SurpriseScale::ScaledArctan => std::f64::consts::FRAC_2_PI * gap.atan(),
        SurpriseScale::RawArctan => gap.atan(),
    }
}

/// Operant conditioning: `gamma * |surp| * (sgn(surp) * item - pi)`, with
/// sgn(0) := 0 so zero surprise is a no-op.
pub fn operant_conditioning_delta(
    pi: &[f64],
    item: &[f64],
    surp: f64,
    gamma: f64,
) -> PreferenceDelta {
    assert_eq!(pi.len(), item.len(), "dimension mismatch");
    if surp == 0.0 {
        return vec![0.0; pi.len()];
    }
    let magnitude = gamma * surp.abs();
    let sign = surp.signum();
    pi.iter()
        .zip(item)
        .map(|(p, v)| magnitude * (sign * v - p))
        .collect()
}

/// Hedonic adaptation: drift toward the fixed baseline preference,
/// `gamma * (baseline_pref - pi)`, independent of the recommended item.
pub fn hedonic_adaptation_delta(pi: &[f64], baseline_pref: &[f64], gamma: f64) -> PreferenceDelta {
    assert_eq!(pi.len(), baseline_pref.len(), "dimension mismatch");
    pi.iter()
        .zip(baseline_pref)
        .map(|(p, b)| gamma * (b - p))
        .collect()
}

/// One full preference update. `history` holds the interactions before the
/// current one; the current rating is passed separately.
pub fn composite_update(
    pref: &PreferenceState,
    item: &[f64],
    rating: f64,
    history: &InteractionHistory,
    cfg: &DynamicsConfig,
    rng: &mut RngStream,
) -> PreferenceState {
    let baseline = if cfg.gamma_oc > 0.0 {
        discounted_baseline(history, cfg.discount_delta)
    } else {
        0.0
    };
    composite_update_with_baseline(pref, item, rating, baseline, cfg, rng)
}

/// [`composite_update`] with a precomputed rating baseline; the simulation
/// loop maintains the baseline incrementally and calls this directly.
pub fn composite_update_with_baseline(
    pref: &PreferenceState,
    item: &[f64],
    rating: f64,
    rating_baseline: f64,
    cfg: &DynamicsConfig,
    rng: &mut RngStream,
) -> PreferenceState {
    assert_eq!(pref.dim(), item.len(), "dimension mismatch");
    let mut pi = pref.pi.clone();
    if cfg.gamma_me > 0.0 {
        for (p, d) in pi
            .iter_mut()
            .zip(mere_exposure_delta(&pref.pi, item, cfg.gamma_me))
        {
            *p += d;
        }
    }
    if cfg.gamma_oc > 0.0 {
        let surp = surprise(rating_baseline, rating, cfg);
        for (p, d) in pi.iter_mut().zip(operant_conditioning_delta(
            &pref.pi,
            item,
            surp,
            cfg.gamma_oc,
        )) {
            *p += d;
        }
    }
    if cfg.gamma_ha > 0.0 {
        for (p, d) in pi.iter_mut().zip(hedonic_adaptation_delta(
            &pref.pi,
            &pref.baseline,
            cfg.gamma_ha,
        )) {
            *p += d;
        }
    }
    if cfg.pref_noise_std > 0.0 {
        for p in pi.iter_mut() {
            *p += rng.normal(0.0, cfg.pref_noise_std);
        }
    }
    PreferenceState {
        pi,
        baseline: pref.baseline.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::InteractionRecord;

    fn history_of(ratings: &[f64]) -> InteractionHistory {
        let mut h = InteractionHistory::new();
        for (i, &r) in ratings.iter().enumerate() {
            h.push(InteractionRecord {
                step: i + 1,
                item_index: 0,
                rating: r,
                noiseless_rating: r,
            });
        }
        h
    }

    #[test]
    fn mere_exposure_moves_toward_item() {
        assert_eq!(
            mere_exposure_delta(&[1.0, 0.0], &[0.0, 1.0], 0.1),
            vec![-0.1, 0.1]
        );
        assert_eq!(
            mere_exposure_delta(&[1.0, 0.0], &[0.0, 1.0], 0.0),
            vec![0.0, 0.0]
        );
        // gamma = 1 jumps all the way onto the item.
        assert_eq!(
            mere_exposure_delta(&[1.0, 0.0], &[0.0, 1.0], 1.0),
            vec![-1.0, 1.0]
        );
    }

    #[test]
    fn baseline_conventions() {
        assert_eq!(discounted_baseline(&history_of(&[]), 0.5), 0.0);
        assert_eq!(discounted_baseline(&history_of(&[2.0]), 0.5), 2.0);
        let b = discounted_baseline(&history_of(&[1.0, 3.0]), 0.5);
        assert!((b - 7.0 / 3.0).abs() < 1e-12, "got {b}");
        // delta = 0 keeps only the most recent rating.
        assert_eq!(discounted_baseline(&history_of(&[1.0, 3.0]), 0.0), 3.0);
        // delta = 1 is the unweighted mean.
        assert_eq!(discounted_baseline(&history_of(&[1.0, 3.0]), 1.0), 2.0);
    }

    #[test]
    fn tracker_matches_direct_baseline() {
        let ratings = [0.3, -1.2, 4.0, 0.0, 2.5, -0.7];
        for &delta in &[0.0, 0.25, 0.5, 0.9, 0.99, 1.0] {
            let mut tracker = BaselineTracker::new(delta);
            for k in 0..=ratings.len() {
                let direct = discounted_baseline(&history_of(&ratings[..k]), delta);
                let incremental = tracker.baseline();
                assert!(
                    (direct - incremental).abs() <= 1e-12 * direct.abs().max(1.0),
                    "delta={delta} k={k}: direct {direct} vs incremental {incremental}"
                );
                if k < ratings.len() {
                    tracker.push(ratings[k]);
                }
            }
        }
    }

    #[test]
    fn surprise_examples() {
        let cfg = DynamicsConfig::default();
        assert!((surprise(0.0, 1.0, &cfg) - 0.5).abs() < 1e-12);
        assert_eq!(surprise(1.5, 1.5, &cfg), 0.0);
        let s = surprise(7.0 / 3.0, 1.0, &cfg);
        let expected = std::f64::consts::FRAC_2_PI * (-4.0f64 / 3.0).atan();
        assert!((s - expected).abs() < 1e-12);
        assert!((s + 0.5903).abs() < 1e-4, "got {s}");
    }

    #[test]
    fn surprise_sign_and_scale_switches() {
        let literal = DynamicsConfig {
            surprise_sign: SurpriseSign::Literal,
            ..Default::default()
        };
        assert!((surprise(0.0, 1.0, &literal) + 0.5).abs() < 1e-12);
        let raw = DynamicsConfig {
            surprise_scale: SurpriseScale::RawArctan,
            ..Default::default()
        };
        assert!((surprise(0.0, 1.0, &raw) - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
    }

    #[test]
    fn operant_conditioning_directions() {
        let pi = [1.0, 0.0];
        let item = [0.0, 1.0];
        let pos = operant_conditioning_delta(&pi, &item, 0.5, 0.1);
        assert!(pos
            .iter()
            .zip(&[-0.05, 0.05])
            .all(|(a, b)| (a - b).abs() < 1e-15));
        let neg = operant_conditioning_delta(&pi, &item, -0.5, 0.1);
        assert!(neg
            .iter()
            .zip(&[-0.05, -0.05])
            .all(|(a, b)| (a - b).abs() < 1e-15));
        assert_eq!(
            operant_conditioning_delta(&pi, &item, 0.0, 0.1),
            vec![0.0, 0.0]
        );
    }

    #[test]
    fn hedonic_adaptation_examples() {
        assert_eq!(
            hedonic_adaptation_delta(&[1.0, 0.0], &[0.0, 0.0], 0.01),
            vec![-0.01, 0.0]
        );
        assert_eq!(
            hedonic_adaptation_delta(&[1.0, 0.0], &[0.5, 0.5], 1.0),
            vec![-0.5, 0.5]
        );
        assert_eq!(
            hedonic_adaptation_delta(&[0.5, 0.5], &[0.5, 0.5], 0.3),
            vec![0.0, 0.0]
        );
    }

    #[test]
    fn static_configuration_is_identity() {
        let cfg = DynamicsConfig::static_user();
        let pref = PreferenceState::from_initial(vec![0.4, -0.7]);
        let mut rng = RngStream::new(1, "pref-noise");
        let next = composite_update(
            &pref,
            &[1.0, 1.0],
            2.0,
            &InteractionHistory::new(),
            &cfg,
            &mut rng,
        );
        assert_eq!(next.pi, pref.pi);
    }

    #[test]
    fn single_effect_composite_equals_component() {
        let cfg = DynamicsConfig {
            gamma_me: 0.1,
            pref_noise_std: 0.0,
            ..Default::default()
        };
        let pref = PreferenceState::from_initial(vec![0.4, -0.7]);
        let item = [1.0, 1.0];
        let mut rng = RngStream::new(1, "pref-noise");
        let next = composite_update(
            &pref,
            &item,
            2.0,
            &InteractionHistory::new(),
            &cfg,
            &mut rng,
        );
        let delta = mere_exposure_delta(&pref.pi, &item, 0.1);
        for ((n, p), d) in next.pi.iter().zip(&pref.pi).zip(&delta) {
            assert!((n - (p + d)).abs() < 1e-15);
        }
    }

    #[test]
    fn composite_is_sum_of_components() {
        let cfg = DynamicsConfig {
            gamma_me: 0.05,
            gamma_oc: 0.1,
            pref_noise_std: 0.0,
            ..Default::default()
        };
        let pref = PreferenceState::from_initial(vec![0.4, -0.7]);
        let item = [1.0, 1.0];
        let history = history_of(&[0.5, 1.5]);
        let mut rng = RngStream::new(1, "pref-noise");
        let next = composite_update(&pref, &item, 2.0, &history, &cfg, &mut rng);

        let baseline = discounted_baseline(&history, cfg.discount_delta);
        let surp = surprise(baseline, 2.0, &cfg);
        let me = mere_exposure_delta(&pref.pi, &item, cfg.gamma_me);
        let oc = operant_conditioning_delta(&pref.pi, &item, surp, cfg.gamma_oc);
        for i in 0..2 {
            let expected = pref.pi[i] + me[i] + oc[i];
            assert!((next.pi[i] - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn gamma_sum_validation() {
        let cfg = DynamicsConfig {
            gamma_me: 0.5,
            gamma_oc: 0.4,
            gamma_ha: 0.2,
            ..Default::default()
        };
        assert!(matches!(
            cfg.validate(),
            Err(ConfigError::GammaSumExceedsOne(_))
        ));
    }
}
