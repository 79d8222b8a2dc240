//! Core domain types: item catalog, user preference state, ratings, and
//! interaction history.

use crate::error::ConfigError;
use crate::rng::RngStream;

/// Inner product of two equal-length vectors.
#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len(), "dimension mismatch");
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Euclidean norm.
#[inline]
pub fn norm(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

/// The fixed set of latent item vectors. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ItemCatalog {
    data: Vec<f64>,
    n: usize,
    d: usize,
}

impl ItemCatalog {
    /// Build a catalog from explicit vectors, validating shape and finiteness.
    pub fn from_vectors(items: Vec<Vec<f64>>) -> Result<Self, ConfigError> {
        if items.is_empty() {
            return Err(ConfigError::InvalidItemCount(0));
        }
        let d = items[0].len();
        if d == 0 {
            return Err(ConfigError::InvalidDimension(0));
        }
        let n = items.len();
        let mut data = Vec::with_capacity(n * d);
        for (i, v) in items.iter().enumerate() {
            if v.len() != d {
                return Err(ConfigError::Invalid(format!(
                    "item {i} has {} entries, expected {d}",
                    v.len()
                )));
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(ConfigError::Invalid(format!(
                    "item {i} has non-finite entries"
                )));
            }
            data.extend_from_slice(v);
        }
        Ok(Self { data, n, d })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn item(&self, i: usize) -> &[f64] {
        &self.data[i * self.d..(i + 1) * self.d]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.d)
    }

    /// Largest item norm in the catalog.
    pub fn max_norm(&self) -> f64 {
        self.iter().map(norm).fold(0.0, f64::max)
    }

    /// Mean item norm over the catalog.
    pub fn mean_norm(&self) -> f64 {
        self.iter().map(norm).sum::<f64>() / self.n as f64
    }
}

/// The user's true preference vector plus the fixed adaptation baseline.
#[derive(Debug, Clone, PartialEq)]
pub struct PreferenceState {
    pub pi: Vec<f64>,
    pub baseline: Vec<f64>,
}

impl PreferenceState {
    /// New state with an explicit baseline. Dimensions must match.
    pub fn new(pi: Vec<f64>, baseline: Vec<f64>) -> Self {
        assert_eq!(pi.len(), baseline.len(), "dimension mismatch");
        Self { pi, baseline }
    }

    /// New state whose baseline defaults to the initial preference itself.
    pub fn from_initial(pi: Vec<f64>) -> Self {
        let baseline = pi.clone();
        Self { pi, baseline }
    }

    pub fn dim(&self) -> usize {
        self.pi.len()
    }
}

/// One observed interaction: the user's rating of a recommended item.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rating {
    pub observed: f64,
    pub noiseless: f64,
}

/// A single row of the interaction history.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteractionRecord {
    /// 1-based time index.
    pub step: usize,
    pub item_index: usize,
    /// Observed rating, noise included.
    pub rating: f64,
    pub noiseless_rating: f64,
}

/// Ordered interaction records with contiguous steps starting at 1.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct InteractionHistory {
    records: Vec<InteractionRecord>,
}

impl InteractionHistory {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, record: InteractionRecord) {
        assert_eq!(
            record.step,
            self.records.len() + 1,
            "history steps must be contiguous starting at 1"
        );
        self.records.push(record);
    }

    pub fn records(&self) -> &[InteractionRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn last_rating(&self) -> Option<f64> {
        self.records.last().map(|r| r.rating)
    }
}

/// Stream labels used by the simulation engine. Centralized so every entry
/// point derives the same per-purpose streams from a run seed.
pub mod stream {
    pub const CATALOG: &str = "catalog";
    pub const INITIAL_PREF: &str = "initial-pref";
    pub const ESTIMATE_INIT: &str = "estimate-init";
    pub const RATING_NOISE: &str = "rating-noise";
    pub const PREF_NOISE: &str = "pref-noise";
    pub const POLICY: &str = "policy";
}

fn validate_sampling(n: usize, d: usize, sigma: f64) -> Result<(), ConfigError> {
    if n < 1 {
        return Err(ConfigError::InvalidItemCount(n));
    }
    if d < 1 {
        return Err(ConfigError::InvalidDimension(d));
    }
    // sigma = 0 would put every item at the origin and make all policies
    // degenerate; reject instead of silently sampling zeros.
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(ConfigError::InvalidSigma(sigma));
    }
    Ok(())
}

/// Sample `n` item vectors with i.i.d. Gaussian(0, sigma) coordinates.
pub fn sample_catalog(
    n: usize,
    d: usize,
    sigma: f64,
    rng: &mut RngStream,
) -> Result<ItemCatalog, ConfigError> {
    validate_sampling(n, d, sigma)?;
    let mut data = vec![0.0; n * d];
    rng.fill_normal(sigma, &mut data);
    Ok(ItemCatalog { data, n, d })
}

/// Sample the initial preference from the same distribution as the catalog.
/// The baseline defaults to the sampled vector; callers with an explicit
/// baseline override it afterwards.
pub fn sample_initial_preference(
    d: usize,
    sigma: f64,
    rng: &mut RngStream,
) -> Result<PreferenceState, ConfigError> {
    validate_sampling(1, d, sigma)?;
    let mut pi = vec![0.0; d];
    rng.fill_normal(sigma, &mut pi);
    Ok(PreferenceState::from_initial(pi))
}

/// Rate an item: the noiseless value is the inner product, the observed
/// value adds a Gaussian(0, noise_std) draw.
pub fn rate(pref: &PreferenceState, item: &[f64], noise_std: f64, rng: &mut RngStream) -> Rating {
    assert_eq!(pref.dim(), item.len(), "dimension mismatch");
    assert!(
        noise_std.is_finite() && noise_std >= 0.0,
        "noise_std must be non-negative"
    );
    let noiseless = dot(&pref.pi, item);
    let observed = if noise_std > 0.0 {
        noiseless + rng.normal(0.0, noise_std)
    } else {
        noiseless
    };
    Rating {
        observed,
        noiseless,
    }
}
