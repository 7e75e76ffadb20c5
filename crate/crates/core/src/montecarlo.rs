//! Trial orchestration: reproducible per-trial random streams, the Wilson
//! interval estimator, parameter sweeps with common random numbers across
//! deployment modes, and order-independent geometry digests.
//!
//! Trial `i` of a run always draws from `trial_stream(seed, i)`, so results
//! are invariant to worker count and execution order; aggregation is a plain
//! sum of counts.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::rng::{trial_stream, TrialRng};

const Z_95: f64 = 1.959963984540054;

/// Estimated coverage probability with a 95% Wilson interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoverageEstimate {
    pub p_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub n_trials: u64,
    pub seed: u64,
}

impl CoverageEstimate {
    /// Builds the estimate from a success count using the Wilson score
    /// interval, which stays inside [0, 1] and behaves near the endpoints.
    pub fn from_successes(successes: u64, n_trials: u64, seed: u64) -> Self {
        assert!(n_trials >= 1 && successes <= n_trials);
        let n = n_trials as f64;
        let p = successes as f64 / n;
        let z2 = Z_95 * Z_95;
        let denom = 1.0 + z2 / n;
        let center = (p + z2 / (2.0 * n)) / denom;
        let half = Z_95 / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
        // The Wilson interval contains the point estimate analytically; the
        // min/max guards only absorb floating rounding at the endpoints.
        CoverageEstimate {
            p_hat: p,
            ci_low: (center - half).max(0.0).min(p),
            ci_high: (center + half).min(1.0).max(p),
            n_trials,
            seed,
        }
    }

    /// True when the two intervals do not overlap.
    pub fn ci_separated_from(&self, other: &CoverageEstimate) -> bool {
        self.ci_low > other.ci_high || other.ci_low > self.ci_high
    }

    /// Standard error of the point estimate.
    pub fn standard_error(&self) -> f64 {
        (self.p_hat * (1.0 - self.p_hat) / self.n_trials as f64).sqrt()
    }
}

/// Outcome of one trial: the coverage indicator, an order-independent digest
/// of the geometry the trial sampled, and a flag for documented degenerate
/// paths (e.g. an RE placement falling back to the EE rule).
#[derive(Debug, Clone, Copy)]
pub struct TrialOutcome {
    pub covered: bool,
    pub geometry_digest: u64,
    pub flagged: bool,
}

impl TrialOutcome {
    pub fn new(covered: bool, geometry_digest: u64) -> Self {
        TrialOutcome {
            covered,
            geometry_digest,
            flagged: false,
        }
    }
}

/// Runs `n` independent trials and aggregates the success count.
pub fn run_trials<F>(trial_fn: F, n: u64, seed: u64) -> CoverageEstimate
where
    F: Fn(&mut TrialRng) -> bool + Sync,
{
    let (est, _, _) = run_trials_outcome(
        |rng| TrialOutcome::new(trial_fn(rng), 0),
        n,
        seed,
    );
    est
}

/// Runs `n` independent trials, also combining per-trial geometry digests
/// with a wrapping sum and counting flagged trials, both independent of
/// execution order.
pub fn run_trials_outcome<F>(trial_fn: F, n: u64, seed: u64) -> (CoverageEstimate, u64, u64)
where
    F: Fn(&mut TrialRng) -> TrialOutcome + Sync,
{
    assert!(n >= 1, "n must be >= 1");
    let (successes, digest, flagged) = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_stream(seed, i);
            let out = trial_fn(&mut rng);
            (out.covered as u64, out.geometry_digest, out.flagged as u64)
        })
        .reduce(
            || (0u64, 0u64, 0u64),
            |a, b| (a.0 + b.0, a.1.wrapping_add(b.1), a.2 + b.2),
        );
    (
        CoverageEstimate::from_successes(successes, n, seed),
        digest,
        flagged,
    )
}

/// One row of a sweep: the swept value, the deployment mode label, the
/// estimate, and the geometry digest of the trial set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub sweep_value: f64,
    pub mode: String,
    pub estimate: CoverageEstimate,
    pub geometry_digest: u64,
    /// Trials that took a documented degenerate path.
    pub flagged_trials: u64,
}

/// Ordered sweep output: one row per (value, mode), values in axis order.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub points: Vec<SweepPoint>,
}

impl SweepResult {
    pub fn find(&self, sweep_value: f64, mode: &str) -> Option<&SweepPoint> {
        self.points
            .iter()
            .find(|p| p.sweep_value == sweep_value && p.mode == mode)
    }
}

/// Runs one estimate per (value, mode). Every mode at a given value reuses
/// the identical per-trial streams (common random numbers), which sharpens
/// ordering comparisons between modes; rows come out in axis order.
pub fn sweep<M, F>(
    values: &[f64],
    modes: &[M],
    n_per_point: u64,
    seed: u64,
    trial_fn: F,
) -> SweepResult
where
    M: std::fmt::Display + Sync,
    F: Fn(f64, &M, &mut TrialRng) -> TrialOutcome + Sync,
{
    assert!(!values.is_empty(), "sweep axis must be non-empty");
    let mut points = Vec::with_capacity(values.len() * modes.len());
    for &value in values {
        for mode in modes {
            let (estimate, geometry_digest, flagged_trials) =
                run_trials_outcome(|rng| trial_fn(value, mode, rng), n_per_point, seed);
            points.push(SweepPoint {
                sweep_value: value,
                mode: mode.to_string(),
                estimate,
                geometry_digest,
                flagged_trials,
            });
        }
    }
    SweepResult { points }
}

/// FNV-1a accumulation of an f64 bit pattern into a digest.
pub fn digest_f64(digest: u64, value: f64) -> u64 {
    let mut h = if digest == 0 { 0xcbf29ce484222325 } else { digest };
    for byte in value.to_bits().to_le_bytes() {
        h ^= byte as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}
