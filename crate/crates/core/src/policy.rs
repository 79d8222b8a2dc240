//! Item-selection policies: uniform, constant, greedy, softmax, and the
//! persistent (momentum) softmax that restricts selection to the half-space
//! the estimate moved toward.

use serde::{Deserialize, Serialize};

use crate::error::ConfigError;
use crate::model::{dot, norm, ItemCatalog};
use crate::rng::RngStream;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolicyKind {
    Uniform,
    Constant,
    Greedy,
    Softmax,
    PersistentSoftmax,
}

/// Selection-rule configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolicyConfig {
    pub kind: PolicyKind,
    /// Softmax temperature; ignored by the baseline policies.
    #[serde(default = "default_beta")]
    pub beta: f64,
    /// Item served by the constant policy.
    #[serde(default)]
    pub constant_index: usize,
    /// Whether the persistent softmax divides beta by the estimate norm the
    /// way the plain softmax does. Off by default.
    #[serde(default)]
    pub persistent_norm_scaling: bool,
}

fn default_beta() -> f64 {
    1.0
}

impl PolicyConfig {
    pub fn new(kind: PolicyKind) -> Self {
        Self {
            kind,
            beta: default_beta(),
            constant_index: 0,
            persistent_norm_scaling: false,
        }
    }

    pub fn softmax(beta: f64) -> Self {
        Self {
            beta,
            ..Self::new(PolicyKind::Softmax)
        }
    }

    pub fn persistent_softmax(beta: f64) -> Self {
        Self {
            beta,
            ..Self::new(PolicyKind::PersistentSoftmax)
        }
    }

    pub fn constant(index: usize) -> Self {
        Self {
            constant_index: index,
            ..Self::new(PolicyKind::Constant)
        }
    }

    pub fn validate(&self, n: usize) -> Result<(), ConfigError> {
        if !(self.beta.is_finite() && self.beta >= 0.0) {
            return Err(ConfigError::InvalidBeta(self.beta));
        }
        if self.kind == PolicyKind::Constant && self.constant_index >= n {
            return Err(ConfigError::ConstantIndexOutOfRange {
                index: self.constant_index,
                n,
            });
        }
        Ok(())
    }

    /// Whether this policy consults predicted scores at all.
    pub fn needs_scores(&self) -> bool {
        matches!(
            self.kind,
            PolicyKind::Greedy | PolicyKind::Softmax | PolicyKind::PersistentSoftmax
        )
    }
}

/// Predicted score per item, `scores[i] = <estimate, v_i>`.
pub type ScoreVector = Vec<f64>;

/// Score every catalog item against an estimate (or the true preference, in
/// oracle mode).
pub fn score_items(estimate: &[f64], catalog: &ItemCatalog) -> ScoreVector {
    let mut scores = Vec::with_capacity(catalog.len());
    score_items_into(estimate, catalog, &mut scores);
    scores
}

/// Buffer-reusing form of [`score_items`] for the simulation hot loop.
pub fn score_items_into(estimate: &[f64], catalog: &ItemCatalog, out: &mut ScoreVector) {
    assert_eq!(estimate.len(), catalog.dim(), "dimension mismatch");
    out.clear();
    out.extend(catalog.iter().map(|item| dot(estimate, item)));
}

/// Uniform selection over `n` items.
pub fn select_uniform(n: usize, rng: &mut RngStream) -> usize {
    rng.index(n)
}

/// Constant selection: always the configured index.
pub fn select_constant(cfg: &PolicyConfig) -> usize {
    cfg.constant_index
}

/// Greedy selection: the argmax score, ties broken uniformly at random.
/// Ties are exact float equality.
pub fn select_greedy(scores: &[f64], rng: &mut RngStream) -> usize {
    assert!(!scores.is_empty(), "cannot select from empty scores");
    let best = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let ties: Vec<usize> = scores
        .iter()
        .enumerate()
        .filter(|(_, &s)| s == best)
        .map(|(i, _)| i)
        .collect();
    if ties.len() == 1 {
        ties[0]
    } else {
        ties[rng.index(ties.len())]
    }
}

/// Softmax probabilities `p_i ∝ exp(beta_eff * s_i)`, computed with
/// max-score subtraction so large scores cannot overflow.
pub fn softmax_probabilities(scores: &[f64], beta_eff: f64) -> Vec<f64> {
    assert!(
        !scores.is_empty(),
        "cannot form a distribution over no scores"
    );
    let max = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut weights: Vec<f64> = scores
        .iter()
        .map(|&s| (beta_eff * (s - max)).exp())
        .collect();
    let total: f64 = weights.iter().sum();
    for w in weights.iter_mut() {
        *w /= total;
    }
    weights
}

/// Draw an index from an explicit probability vector via its CDF.
fn sample_categorical(probabilities: &[f64], rng: &mut RngStream) -> usize {
    let u = rng.uniform();
    let mut acc = 0.0;
    for (i, &p) in probabilities.iter().enumerate() {
        acc += p;
        if u < acc {
            return i;
        }
    }
    probabilities.len() - 1
}

/// Softmax selection with temperature scaled by the estimate norm:
/// `P[i] ∝ exp((beta / estimate_norm) * s_i)`. A zero-norm estimate falls
/// back to uniform selection.
pub fn select_softmax(scores: &[f64], beta: f64, estimate_norm: f64, rng: &mut RngStream) -> usize {
    assert!(!scores.is_empty(), "cannot select from empty scores");
    if estimate_norm == 0.0 {
        return select_uniform(scores.len(), rng);
    }
    let probabilities = softmax_probabilities(scores, beta / estimate_norm);
    sample_categorical(&probabilities, rng)
}

/// Direction the estimate rotated toward between two snapshots: the
/// difference of the normalized estimates. Taking the difference of unit
/// vectors cancels radial growth or shrinkage, leaving the component that
/// actually steers the half-space filter; the raw difference is dominated
/// by magnitude changes and noise in the most recent update.
pub fn momentum_direction(estimate_now: &[f64], estimate_prev: &[f64]) -> Option<Vec<f64>> {
    assert_eq!(
        estimate_now.len(),
        estimate_prev.len(),
        "dimension mismatch"
    );
    let now_norm = norm(estimate_now);
    let prev_norm = norm(estimate_prev);
    if now_norm == 0.0 || prev_norm == 0.0 {
        return None;
    }
    let movement: Vec<f64> = estimate_now
        .iter()
        .zip(estimate_prev)
        .map(|(a, b)| a / now_norm - b / prev_norm)
        .collect();
    if movement.iter().all(|&m| m == 0.0) {
        None
    } else {
        Some(movement)
    }
}

/// Persistent (momentum) softmax: softmax restricted to items in the open
/// half-space of recent estimate movement, `<momentum, v> > 0` with the
/// momentum from [`momentum_direction`].
///
/// Falls back to the plain softmax when no previous estimate exists, the
/// estimate did not move, or no item lies in the half-space. By default
/// beta is used unscaled; `norm_scaling` applies the plain softmax's
/// division by the estimate norm instead.
pub fn select_persistent_softmax(
    scores: &[f64],
    beta: f64,
    estimate_now: &[f64],
    estimate_prev: Option<&[f64]>,
    catalog: &ItemCatalog,
    norm_scaling: bool,
    rng: &mut RngStream,
) -> usize {
    assert_eq!(scores.len(), catalog.len(), "score/catalog length mismatch");
    let beta_eff = if norm_scaling {
        let n = norm(estimate_now);
        if n == 0.0 {
            return select_uniform(scores.len(), rng);
        }
        beta / n
    } else {
        beta
    };

    let allowed: Vec<usize> =
        match estimate_prev.and_then(|prev| momentum_direction(estimate_now, prev)) {
            Some(movement) => (0..catalog.len())
                .filter(|&i| dot(&movement, catalog.item(i)) > 0.0)
                .collect(),
            None => Vec::new(),
        };

    if allowed.is_empty() {
        let probabilities = softmax_probabilities(scores, beta_eff);
        return sample_categorical(&probabilities, rng);
    }

    let sub_scores: Vec<f64> = allowed.iter().map(|&i| scores[i]).collect();
    let probabilities = softmax_probabilities(&sub_scores, beta_eff);
    allowed[sample_categorical(&probabilities, rng)]
}
