use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::estimation::{sample_counts, MlEstimator};
use crate::fisher::{outcome_distribution, Information, OutcomeDistribution};
use crate::interferometer::ParamPoint;

/// Random stream of experiment `index` under `master_seed`.
///
/// ChaCha8 keyed by the master seed with the experiment index as stream id, so
/// streams are independent of scheduling.
pub fn experiment_rng(master_seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(index);
    rng
}

/// Stream id reserved for [`derive_seed`]; experiment indices never reach it.
const SEED_STREAM: u64 = u64::MAX;

/// Seed for the `index`-th independent run under `master_seed`, e.g. one cell of
/// a sweep. Drawn from a stream no experiment uses.
pub fn derive_seed(master_seed: u64, index: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(SEED_STREAM);
    rng.set_word_pos(2 * u128::from(index));
    rng.next_u64()
}

/// `1 / (N · variance)`, infinite when the variance vanishes.
pub fn fisher_from_ml(variance: f64, samples: u64) -> Result<Information> {
    if variance < 0.0 || variance.is_nan() {
        return Err(Error::NegativeVariance(variance));
    }
    if samples == 0 {
        return Err(Error::NoSamples);
    }
    if variance == 0.0 {
        return Ok(Information::Infinite);
    }
    Ok(Information::Finite(1.0 / (samples as f64 * variance)))
}

/// Aggregated statistics of `experiments` simulated estimation runs.
#[derive(Clone, Debug, PartialEq)]
pub struct MonteCarloResult {
    pub set_point: ParamPoint,
    pub mean_phase: f64,
    pub mean_indist: f64,
    /// Unbiased sample variance of the phase estimates (rad²).
    pub var_phase: f64,
    pub var_indist: f64,
    pub fisher_phase: Information,
    pub fisher_indist: Information,
    pub experiments: usize,
    pub samples: u64,
    pub master_seed: u64,
}

impl MonteCarloResult {
    /// `N · Δ²φ̂ · 𝓕`, the ratio to the Cramér–Rao bound for a given phase information.
    pub fn phase_bound_ratio(&self, qfi: f64) -> f64 {
        self.samples as f64 * self.var_phase * qfi
    }

    pub fn indist_bound_ratio(&self, qfi: f64) -> f64 {
        self.samples as f64 * self.var_indist * qfi
    }
}

/// Simulates `experiments` runs of `samples` detections at `point` and estimates
/// `(φ, 𝓘)` by maximum likelihood in each.
pub fn monte_carlo(
    point: ParamPoint,
    samples: u64,
    experiments: usize,
    master_seed: u64,
) -> Result<MonteCarloResult> {
    let dist = outcome_distribution(point);
    monte_carlo_from(
        &MlEstimator::new(),
        point,
        &dist,
        samples,
        experiments,
        master_seed,
    )
}

/// [`monte_carlo`] with an explicit sampling distribution and estimator.
///
/// Experiments may run on any number of rayon workers; results are gathered and
/// reduced in experiment order, so the output only depends on the arguments.
pub fn monte_carlo_from(
    estimator: &MlEstimator,
    set_point: ParamPoint,
    dist: &OutcomeDistribution,
    samples: u64,
    experiments: usize,
    master_seed: u64,
) -> Result<MonteCarloResult> {
    if samples == 0 {
        return Err(Error::NoSamples);
    }
    if experiments < 2 {
        return Err(Error::TooFewExperiments(experiments));
    }
    let estimates: Vec<(f64, f64)> = (0..experiments as u64)
        .into_par_iter()
        .map(|k| {
            let mut rng = experiment_rng(master_seed, k);
            let counts = sample_counts(dist, samples, &mut rng)?;
            let est = estimator.estimate(&counts);
            Ok((est.phase(), est.indistinguishability()))
        })
        .collect::<Result<_>>()?;

    let (mean_phase, var_phase) = mean_and_variance(estimates.iter().map(|e| e.0));
    let (mean_indist, var_indist) = mean_and_variance(estimates.iter().map(|e| e.1));

    Ok(MonteCarloResult {
        set_point,
        mean_phase,
        mean_indist,
        var_phase,
        var_indist,
        fisher_phase: fisher_from_ml(var_phase, samples)?,
        fisher_indist: fisher_from_ml(var_indist, samples)?,
        experiments,
        samples,
        master_seed,
    })
}

/// Mean and unbiased variance, accumulated relative to the first value so a
/// constant sample gives exactly that value and zero variance.
fn mean_and_variance(values: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let Some(shift) = values.clone().next() else {
        return (f64::NAN, f64::NAN);
    };
    let (mut n, mut sum) = (0.0, 0.0);
    for v in values.clone() {
        n += 1.0;
        sum += v - shift;
    }
    let offset = sum / n;
    let ss: f64 = values.map(|v| (v - shift - offset).powi(2)).sum();
    (shift + offset, ss / (n - 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fisher_from_variance() {
        let f = fisher_from_ml(1.0 / (750.0 * 3.0), 750).unwrap();
        assert!((f.finite().unwrap() - 3.0).abs() < 1e-12);
        let g = fisher_from_ml(1.0 / (750.0 * 4.0), 750).unwrap();
        assert!((g.finite().unwrap() - 4.0).abs() < 1e-12);
        assert_eq!(fisher_from_ml(0.0, 750), Ok(Information::Infinite));
        assert!(matches!(
            fisher_from_ml(-1e-3, 750),
            Err(Error::NegativeVariance(_))
        ));
    }

    #[test]
    fn degenerate_variance_is_flagged() {
        // p(1100) = 1 at (𝓘 = 1, φ = 0): every experiment sees the same counts.
        let point = ParamPoint::new(1.0, 0.0).unwrap();
        let r = monte_carlo(point, 750, 2, 9).unwrap();
        assert_eq!(r.var_phase, 0.0);
        assert_eq!(r.var_indist, 0.0);
        assert!(r.fisher_phase.is_infinite() && r.fisher_indist.is_infinite());
    }

    #[test]
    fn argument_checks() {
        let point = ParamPoint::new(0.5, 0.7).unwrap();
        assert_eq!(monte_carlo(point, 0, 10, 1), Err(Error::NoSamples));
        assert_eq!(
            monte_carlo(point, 750, 1, 1),
            Err(Error::TooFewExperiments(1))
        );
    }

    #[test]
    fn streams_differ_by_index_and_seed() {
        use rand::Rng;
        let a: u64 = experiment_rng(1, 0).random();
        let b: u64 = experiment_rng(1, 1).random();
        let c: u64 = experiment_rng(2, 0).random();
        let a2: u64 = experiment_rng(1, 0).random();
        assert_eq!(a, a2);
        assert_ne!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn constant_sample_has_exact_mean_and_zero_variance() {
        let values = vec![std::f64::consts::PI; 2001];
        assert_eq!(
            mean_and_variance(values.iter().copied()),
            (std::f64::consts::PI, 0.0)
        );
        let (mean, var) = mean_and_variance([1.0, 2.0, 3.0, 4.0].into_iter());
        assert_eq!(mean, 2.5);
        assert!((var - 5.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn derived_seeds_are_stable_and_distinct() {
        let seeds: Vec<u64> = (0..1000).map(|k| derive_seed(42, k)).collect();
        let mut unique = seeds.clone();
        unique.sort_unstable();
        unique.dedup();
        assert_eq!(unique.len(), seeds.len());
        assert_eq!(derive_seed(42, 7), seeds[7]);
        assert_ne!(derive_seed(43, 7), seeds[7]);
    }
}
