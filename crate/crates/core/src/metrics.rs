//! Metrics over completed trajectories: engagement, consumption entropy,
//! preference magnitude, oscillation analysis, the convex-hull bound check,
//! the max-entropy (softmax) solver, and Pareto dominance comparison.

use crate::engine::TrajectoryLog;
use crate::error::MetricsError;
use crate::model::{dot, norm, ItemCatalog};
use crate::policy::softmax_probabilities;

/// Window length used for the per-window series in [`summarize`].
pub const DEFAULT_SERIES_WINDOW: usize = 500;
/// Peak prominence used for the oscillation stats in [`summarize`],
/// as a fraction of the series range.
pub const DEFAULT_PEAK_PROMINENCE: f64 = 0.5;

/// Sliding-window and whole-run means of the observed ratings.
#[derive(Debug, Clone, PartialEq)]
pub struct EngagementSummary {
    pub mean: f64,
    pub noiseless_mean: f64,
    pub window_means: Vec<f64>,
    pub noiseless_window_means: Vec<f64>,
}

/// Mean rating over time: sliding-window means plus the full-run scalar.
pub fn engagement(log: &TrajectoryLog, window: usize) -> Result<EngagementSummary, MetricsError> {
    if window < 1 {
        return Err(MetricsError::InvalidWindow);
    }
    if log.ratings.is_empty() {
        return Err(MetricsError::EmptyLog);
    }
    Ok(EngagementSummary {
        mean: mean(&log.ratings),
        noiseless_mean: mean(&log.noiseless_ratings),
        window_means: sliding_means(&log.ratings, window),
        noiseless_window_means: sliding_means(&log.noiseless_ratings, window),
    })
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn sliding_means(xs: &[f64], window: usize) -> Vec<f64> {
    if window > xs.len() {
        return Vec::new();
    }
    let mut sum: f64 = xs[..window].iter().sum();
    let mut out = Vec::with_capacity(xs.len() - window + 1);
    out.push(sum / window as f64);
    for i in window..xs.len() {
        sum += xs[i] - xs[i - window];
        out.push(sum / window as f64);
    }
    out
}

/// Shannon entropy (nats) of a count vector, with 0 ln 0 := 0.
pub fn shannon_entropy(counts: &[usize]) -> f64 {
    let total: usize = counts.iter().sum();
    if total == 0 {
        return 0.0;
    }
    let total = total as f64;
    let h: f64 = counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / total;
            -p * p.ln()
        })
        .sum();
    h + 0.0 // normalizes -0.0 from a single-support count vector
}

/// Whole-run and per-window entropy of the selection frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropySummary {
    /// Entropy of the cumulative selection counts over the full run.
    pub overall: f64,
    /// Entropy per non-overlapping window of `window` selections; only full
    /// windows contribute.
    pub window_entropies: Vec<f64>,
}

/// Shannon entropy (nats) of the empirical item-selection frequencies.
/// `window = None` computes only the full-run scalar.
pub fn consumption_entropy(
    log: &TrajectoryLog,
    window: Option<usize>,
) -> Result<EntropySummary, MetricsError> {
    if log.selections.is_empty() {
        return Err(MetricsError::EmptyLog);
    }
    if window == Some(0) {
        return Err(MetricsError::InvalidWindow);
    }
    let n = log.catalog.len();
    let mut counts = vec![0usize; n];
    for &s in &log.selections {
        counts[s] += 1;
    }
    let overall = shannon_entropy(&counts);

    let window_entropies = match window {
        Some(w) => log
            .selections
            .chunks_exact(w)
            .map(|chunk| {
                let mut c = vec![0usize; n];
                for &s in chunk {
                    c[s] += 1;
                }
                shannon_entropy(&c)
            })
            .collect(),
        None => Vec::new(),
    };
    Ok(EntropySummary {
        overall,
        window_entropies,
    })
}

/// Euclidean norm of the true preference at each snapshot, t = 0..=steps.
pub fn preference_magnitude(log: &TrajectoryLog) -> Vec<f64> {
    log.preferences.iter().map(|p| norm(p)).collect()
}

/// Peaks found in a series, with their spacing.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct OscillationReport {
    /// Indices of qualifying local maxima, strictly increasing.
    pub peak_times: Vec<usize>,
    /// Median gap between consecutive peaks; `None` with fewer than 2 peaks.
    pub median_period: Option<f64>,
    /// Median prominence of the qualifying peaks; 0 when none qualify.
    pub amplitude: f64,
}

impl OscillationReport {
    pub fn peak_count(&self) -> usize {
        self.peak_times.len()
    }
}

/// Find local maxima whose prominence exceeds `prominence_fraction` of the
/// series range. Prominence is the peak height above the higher of the two
/// flanking minima (scanning outward until a taller point or the boundary).
pub fn detect_oscillations(series: &[f64], prominence_fraction: f64) -> OscillationReport {
    if !(prominence_fraction > 0.0 && prominence_fraction < 1.0) || series.len() < 3 {
        return OscillationReport::default();
    }
    let max = series.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = series.iter().copied().fold(f64::INFINITY, f64::min);
    let range = max - min;
    if range <= 0.0 || !range.is_finite() {
        return OscillationReport::default();
    }
    let threshold = prominence_fraction * range;

    let mut peak_times = Vec::new();
    let mut prominences = Vec::new();
    for i in 1..series.len() - 1 {
        let value = series[i];
        if !(series[i - 1] < value && value > series[i + 1]) {
            continue;
        }
        let mut left_min = value;
        for j in (0..i).rev() {
            if series[j] > value {
                break;
            }
            left_min = left_min.min(series[j]);
        }
        let mut right_min = value;
        for &s in &series[i + 1..] {
            if s > value {
                break;
            }
            right_min = right_min.min(s);
        }
        let prominence = value - left_min.max(right_min);
        if prominence > threshold {
            peak_times.push(i);
            prominences.push(prominence);
        }
    }

    let median_period = if peak_times.len() >= 2 {
        let gaps: Vec<f64> = peak_times
            .windows(2)
            .map(|w| (w[1] - w[0]) as f64)
            .collect();
        Some(median(&gaps))
    } else {
        None
    };
    let amplitude = if prominences.is_empty() {
        0.0
    } else {
        median(&prominences)
    };
    OscillationReport {
        peak_times,
        median_period,
        amplitude,
    }
}

fn median(xs: &[f64]) -> f64 {
    let mut sorted = xs.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("NaN in median input"));
    let mid = sorted.len() / 2;
    if sorted.len() % 2 == 0 {
        (sorted[mid - 1] + sorted[mid]) / 2.0
    } else {
        sorted[mid]
    }
}

/// Result of the preference-boundedness check.
#[derive(Debug, Clone, PartialEq)]
pub struct HullCheck {
    pub pass: bool,
    /// Largest preference norm observed over the run.
    pub max_norm: f64,
    /// The claimed bound, max(||pi_0||, max_i ||v_i||).
    pub bound: f64,
}

/// Check that every preference snapshot respects the norm bound implied by
/// containment in conv({pi_0} ∪ V ∪ -V). Only claimed for runs without
/// preference noise and with effect strengths summing to at most 1.
pub fn check_convex_hull_bound(
    log: &TrajectoryLog,
    catalog: &ItemCatalog,
) -> Result<HullCheck, MetricsError> {
    let dynamics = &log.config.dynamics;
    if dynamics.pref_noise_std > 0.0 {
        return Err(MetricsError::NoisyRun(dynamics.pref_noise_std));
    }
    let gamma_sum = dynamics.gamma_sum();
    if gamma_sum > 1.0 {
        return Err(MetricsError::UnboundedDynamics(gamma_sum));
    }
    let bound = norm(log.initial_preference()).max(catalog.max_norm());
    let max_norm = preference_magnitude(log).into_iter().fold(0.0, f64::max);
    Ok(HullCheck {
        pass: max_norm <= bound + 1e-9,
        max_norm,
        bound,
    })
}

/// The entropy-maximizing distribution at a target mean rating.
#[derive(Debug, Clone, PartialEq)]
pub struct MaxEntropySolution {
    pub probabilities: Vec<f64>,
    pub beta: f64,
}

impl MaxEntropySolution {
    pub fn entropy(&self) -> f64 {
        -self
            .probabilities
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| p * p.ln())
            .sum::<f64>()
    }
}

const MAX_ENT_TOLERANCE: f64 = 1e-9;

/// Solve for the distribution maximizing entropy subject to a mean-rating
/// constraint `sum_i p_i r_i = target`. The solution has the softmax form
/// `p_i ∝ exp(beta r_i)`; the mean is strictly increasing in beta, so
/// bisection over an expanding bracket converges. Requires
/// `min(r) < target < max(r)`, or `target` equal to the uniform mean
/// (the beta = 0 case).
pub fn max_entropy_distribution(
    ratings: &[f64],
    target: f64,
) -> Result<MaxEntropySolution, MetricsError> {
    if ratings.is_empty() {
        return Err(MetricsError::EmptyRatings);
    }
    let min = ratings.iter().copied().fold(f64::INFINITY, f64::min);
    let max = ratings.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let uniform_mean = mean(ratings);
    if (target - uniform_mean).abs() <= MAX_ENT_TOLERANCE {
        let p = 1.0 / ratings.len() as f64;
        return Ok(MaxEntropySolution {
            probabilities: vec![p; ratings.len()],
            beta: 0.0,
        });
    }
    if !(target > min && target < max) {
        return Err(MetricsError::InfeasibleTarget { target, min, max });
    }

    let mean_at = |beta: f64| -> f64 {
        let p = softmax_probabilities(ratings, beta);
        dot(&p, ratings)
    };

    let mut lo = -1.0;
    let mut hi = 1.0;
    for _ in 0..200 {
        if mean_at(lo) <= target {
            break;
        }
        lo *= 2.0;
    }
    for _ in 0..200 {
        if mean_at(hi) >= target {
            break;
        }
        hi *= 2.0;
    }

    let mut beta = 0.0;
    for _ in 0..500 {
        beta = 0.5 * (lo + hi);
        let m = mean_at(beta);
        if m < target {
            lo = beta;
        } else {
            hi = beta;
        }
        if hi - lo <= 1e-13 * beta.abs().max(1.0) {
            break;
        }
    }

    let probabilities = softmax_probabilities(ratings, beta);
    let residual = (dot(&probabilities, ratings) - target).abs();
    if residual > MAX_ENT_TOLERANCE {
        return Err(MetricsError::SolverDidNotConverge { residual });
    }
    Ok(MaxEntropySolution {
        probabilities,
        beta,
    })
}

/// Pairwise strict-dominance structure of (engagement, entropy) points.
/// A point dominates another when it is strictly greater in both
/// coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct DominanceReport {
    /// For each point, the indices of points strictly dominating it.
    pub dominated_by: Vec<Vec<usize>>,
    /// Indices of the non-dominated points.
    pub frontier: Vec<usize>,
}

pub fn strictly_dominates(a: (f64, f64), b: (f64, f64)) -> bool {
    a.0 > b.0 && a.1 > b.1
}

pub fn pareto_compare(points: &[(f64, f64)]) -> DominanceReport {
    let dominated_by: Vec<Vec<usize>> = points
        .iter()
        .map(|&p| {
            points
                .iter()
                .enumerate()
                .filter(|&(_, &q)| strictly_dominates(q, p))
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    let frontier = dominated_by
        .iter()
        .enumerate()
        .filter(|(_, d)| d.is_empty())
        .map(|(i, _)| i)
        .collect();
    DominanceReport {
        dominated_by,
        frontier,
    }
}

/// Headline metrics of one run: whole-run scalars, per-window series, and
/// oscillation stats of the preference magnitude.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricSummary {
    pub mean_engagement: f64,
    pub mean_noiseless_engagement: f64,
    /// Entropy of the cumulative selection counts, in nats.
    pub consumption_entropy: f64,
    /// Time-average of the preference norm over all snapshots.
    pub mean_magnitude: f64,
    /// Mean rating per window of [`DEFAULT_SERIES_WINDOW`] steps.
    pub engagement_series: Vec<f64>,
    /// Selection entropy per window of [`DEFAULT_SERIES_WINDOW`] steps.
    pub entropy_series: Vec<f64>,
    /// Mean preference norm per window of [`DEFAULT_SERIES_WINDOW`] steps.
    pub magnitude_series: Vec<f64>,
    /// Oscillation stats of the preference-norm series at
    /// [`DEFAULT_PEAK_PROMINENCE`].
    pub oscillation: OscillationReport,
}

fn chunk_means(xs: &[f64], window: usize) -> Vec<f64> {
    xs.chunks_exact(window).map(mean).collect()
}

/// Summarize a run. A zero-step log yields zero scalars and empty series.
pub fn summarize(log: &TrajectoryLog) -> MetricSummary {
    let magnitudes = preference_magnitude(log);
    let oscillation = detect_oscillations(&magnitudes, DEFAULT_PEAK_PROMINENCE);
    if log.selections.is_empty() {
        return MetricSummary {
            mean_engagement: 0.0,
            mean_noiseless_engagement: 0.0,
            consumption_entropy: 0.0,
            mean_magnitude: mean(&magnitudes),
            engagement_series: Vec::new(),
            entropy_series: Vec::new(),
            magnitude_series: Vec::new(),
            oscillation,
        };
    }
    let entropy = consumption_entropy(log, Some(DEFAULT_SERIES_WINDOW))
        .expect("non-empty log admits entropy");
    MetricSummary {
        mean_engagement: mean(&log.ratings),
        mean_noiseless_engagement: mean(&log.noiseless_ratings),
        consumption_entropy: entropy.overall,
        mean_magnitude: mean(&magnitudes),
        engagement_series: chunk_means(&log.ratings, DEFAULT_SERIES_WINDOW),
        entropy_series: entropy.window_entropies,
        magnitude_series: chunk_means(&magnitudes[1..], DEFAULT_SERIES_WINDOW),
        oscillation,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::DynamicsConfig;
    use crate::engine::{run_simulation, SimulationConfig};
    use crate::policy::PolicyConfig;

    fn small_log(ratings: Vec<f64>, selections: Vec<usize>) -> TrajectoryLog {
        // Build a real log via the engine, then splice in the series under
        // test so metric arithmetic is exercised directly.
        let mut config = SimulationConfig::new(4, 2, ratings.len());
        config.policy = PolicyConfig::new(crate::policy::PolicyKind::Uniform);
        config.dynamics = DynamicsConfig::static_user();
        config.rating_noise_std = 0.0;
        let mut log = run_simulation(config).unwrap();
        log.noiseless_ratings = ratings.clone();
        log.ratings = ratings;
        log.selections = selections;
        log
    }

    #[test]
    fn engagement_means() {
        let log = small_log(vec![1.0, 2.0, 3.0], vec![0, 1, 2]);
        let full = engagement(&log, 3).unwrap();
        assert_eq!(full.mean, 2.0);
        assert_eq!(full.window_means, vec![2.0]);

        let singles = engagement(&log, 1).unwrap();
        assert_eq!(singles.window_means, vec![1.0, 2.0, 3.0]);

        let log = small_log(vec![0.0, 0.0, 4.0, 4.0], vec![0, 0, 1, 1]);
        let pairs = engagement(&log, 2).unwrap();
        assert_eq!(pairs.window_means, vec![0.0, 2.0, 4.0]);
    }

    #[test]
    fn engagement_rejects_empty_and_bad_window() {
        let mut config = SimulationConfig::new(4, 2, 0);
        config.policy = PolicyConfig::new(crate::policy::PolicyKind::Uniform);
        let log = run_simulation(config).unwrap();
        assert_eq!(engagement(&log, 1).unwrap_err(), MetricsError::EmptyLog);
        let log = small_log(vec![1.0], vec![0]);
        assert_eq!(
            engagement(&log, 0).unwrap_err(),
            MetricsError::InvalidWindow
        );
    }

    #[test]
    fn entropy_examples() {
        let log = small_log(vec![0.0; 5], vec![2, 2, 2, 2, 2]);
        assert_eq!(consumption_entropy(&log, None).unwrap().overall, 0.0);

        let log = small_log(vec![0.0; 4], vec![0, 1, 2, 3]);
        let h = consumption_entropy(&log, None).unwrap().overall;
        assert!((h - 4.0f64.ln()).abs() < 1e-12);

        let log = small_log(vec![0.0; 4], vec![0, 0, 0, 1]);
        let h = consumption_entropy(&log, None).unwrap().overall;
        let expected = -(0.75f64.ln() * 0.75 + 0.25f64.ln() * 0.25);
        assert!((h - expected).abs() < 1e-12);
        assert!((h - 0.5623).abs() < 1e-4);
    }

    #[test]
    fn entropy_is_bounded_by_distinct_count() {
        let log = small_log(vec![0.0; 6], vec![0, 1, 1, 2, 2, 2]);
        let h = consumption_entropy(&log, Some(3)).unwrap();
        assert!(h.overall >= 0.0 && h.overall <= 3.0f64.ln() + 1e-12);
        for &w in &h.window_entropies {
            assert!(w >= 0.0 && w <= 3.0f64.ln() + 1e-12);
        }
    }

    #[test]
    fn magnitude_of_known_vector() {
        let mut log = small_log(vec![0.0], vec![0]);
        log.preferences = vec![vec![3.0, 4.0], vec![3.0, 4.0]];
        assert_eq!(preference_magnitude(&log), vec![5.0, 5.0]);
    }

    #[test]
    fn pure_hedonic_adaptation_decays_geometrically() {
        let mut config = SimulationConfig::new(8, 2, 200);
        config.policy = PolicyConfig::new(crate::policy::PolicyKind::Uniform);
        config.dynamics = DynamicsConfig {
            gamma_ha: 0.05,
            pref_noise_std: 0.0,
            ..Default::default()
        };
        config.baseline = Some(vec![0.0, 0.0]);
        config.rating_noise_std = 0.0;
        config.seed = 3;
        let log = run_simulation(config).unwrap();
        let magnitudes = preference_magnitude(&log);
        let initial = magnitudes[0];
        for (t, &m) in magnitudes.iter().enumerate() {
            let expected = 0.95f64.powi(t as i32) * initial;
            assert!(
                (m - expected).abs() <= 1e-9 * expected.max(1e-300),
                "t={t}: {m} vs {expected}"
            );
        }
    }

    #[test]
    fn oscillation_detection_on_synthetic_signals() {
        let flat = vec![1.0; 100];
        assert_eq!(detect_oscillations(&flat, 0.5).peak_count(), 0);

        let ramp: Vec<f64> = (0..100).map(|t| t as f64).collect();
        assert_eq!(detect_oscillations(&ramp, 0.5).peak_count(), 0);

        let sine: Vec<f64> = (0..1000)
            .map(|t| (2.0 * std::f64::consts::PI * t as f64 / 100.0).sin())
            .collect();
        let report = detect_oscillations(&sine, 0.5);
        assert!(report.peak_count() >= 8, "found {}", report.peak_count());
        let period = report.median_period.unwrap();
        assert!((period - 100.0).abs() <= 2.0, "period {period}");
    }

    #[test]
    fn oscillation_detection_is_shift_and_scale_invariant() {
        let series: Vec<f64> = (0..600)
            .map(|t| {
                (2.0 * std::f64::consts::PI * t as f64 / 75.0).sin() + 0.1 * (t as f64 / 300.0)
            })
            .collect();
        let base = detect_oscillations(&series, 0.4);
        let shifted: Vec<f64> = series.iter().map(|x| x + 42.0).collect();
        let scaled: Vec<f64> = series.iter().map(|x| x * 13.7).collect();
        assert_eq!(
            base.peak_times,
            detect_oscillations(&shifted, 0.4).peak_times
        );
        assert_eq!(
            base.peak_times,
            detect_oscillations(&scaled, 0.4).peak_times
        );
    }

    #[test]
    fn hull_bound_holds_for_pure_effects() {
        // Hedonic adaptation toward the initial preference keeps pi fixed.
        let mut config = SimulationConfig::new(8, 2, 100);
        config.policy = PolicyConfig::new(crate::policy::PolicyKind::Uniform);
        config.dynamics = DynamicsConfig {
            gamma_ha: 0.2,
            pref_noise_std: 0.0,
            ..Default::default()
        };
        config.rating_noise_std = 0.0;
        let log = run_simulation(config).unwrap();
        let check = check_convex_hull_bound(&log, &log.catalog.clone()).unwrap();
        assert!(check.pass, "max {} bound {}", check.max_norm, check.bound);

        // Mere exposure toward a constant item interpolates inside the hull.
        let mut config = SimulationConfig::new(8, 2, 500);
        config.policy = PolicyConfig::constant(3);
        config.dynamics = DynamicsConfig {
            gamma_me: 0.1,
            pref_noise_std: 0.0,
            ..Default::default()
        };
        config.rating_noise_std = 0.0;
        let log = run_simulation(config).unwrap();
        let check = check_convex_hull_bound(&log, &log.catalog.clone()).unwrap();
        assert!(check.pass);
    }

    #[test]
    fn hull_check_flags_noisy_runs() {
        let mut config = SimulationConfig::new(8, 2, 10);
        config.policy = PolicyConfig::new(crate::policy::PolicyKind::Uniform);
        config.dynamics = DynamicsConfig {
            gamma_me: 0.1,
            ..Default::default()
        };
        let log = run_simulation(config).unwrap();
        assert!(matches!(
            check_convex_hull_bound(&log, &log.catalog.clone()),
            Err(MetricsError::NoisyRun(_))
        ));
    }

    #[test]
    fn max_entropy_two_point_solution() {
        let solution = max_entropy_distribution(&[0.0, 1.0], 0.75).unwrap();
        assert!((solution.probabilities[0] - 0.25).abs() < 1e-9);
        assert!((solution.probabilities[1] - 0.75).abs() < 1e-9);
        assert!((solution.beta - 3.0f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn max_entropy_uniform_mean_gives_beta_zero() {
        let solution = max_entropy_distribution(&[1.0, 2.0, 3.0], 2.0).unwrap();
        assert_eq!(solution.beta, 0.0);
        for &p in &solution.probabilities {
            assert!((p - 1.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn max_entropy_rejects_infeasible_targets() {
        assert!(matches!(
            max_entropy_distribution(&[0.0, 1.0], 1.5),
            Err(MetricsError::InfeasibleTarget { .. })
        ));
        assert!(matches!(
            max_entropy_distribution(&[0.0, 1.0], 1.0),
            Err(MetricsError::InfeasibleTarget { .. })
        ));
    }

    #[test]
    fn max_entropy_log_probabilities_are_affine_in_ratings() {
        let ratings = [0.3, -1.2, 0.9, 2.0];
        let solution = max_entropy_distribution(&ratings, 1.1).unwrap();
        let lp: Vec<f64> = solution.probabilities.iter().map(|p| p.ln()).collect();
        // Least-squares affine fit of ln p against r.
        let n = ratings.len() as f64;
        let mr = ratings.iter().sum::<f64>() / n;
        let ml = lp.iter().sum::<f64>() / n;
        let cov: f64 = ratings
            .iter()
            .zip(&lp)
            .map(|(r, l)| (r - mr) * (l - ml))
            .sum();
        let var: f64 = ratings.iter().map(|r| (r - mr) * (r - mr)).sum();
        let slope = cov / var;
        let intercept = ml - slope * mr;
        for (r, l) in ratings.iter().zip(&lp) {
            assert!((l - (intercept + slope * r)).abs() < 1e-9);
        }
        assert!((slope - solution.beta).abs() < 1e-6);
    }

    #[test]
    fn pareto_examples() {
        let report = pareto_compare(&[(1.0, 1.0), (2.0, 2.0)]);
        assert_eq!(report.dominated_by[0], vec![1]);
        assert!(report.dominated_by[1].is_empty());

        let report = pareto_compare(&[(1.0, 2.0), (2.0, 1.0)]);
        assert!(report.dominated_by.iter().all(|d| d.is_empty()));

        let report = pareto_compare(&[(1.0, 3.0), (2.0, 2.0), (3.0, 1.0), (1.0, 1.0)]);
        assert_eq!(report.frontier, vec![0, 1, 2]);
    }

    #[test]
    fn frontier_matches_brute_force_on_random_points() {
        let mut rng = crate::rng::RngStream::new(17, "policy");
        let points: Vec<(f64, f64)> = (0..40).map(|_| (rng.uniform(), rng.uniform())).collect();
        let report = pareto_compare(&points);
        for (i, &p) in points.iter().enumerate() {
            let dominated = points.iter().any(|&q| strictly_dominates(q, p));
            assert_eq!(report.frontier.contains(&i), !dominated);
        }
    }
}
