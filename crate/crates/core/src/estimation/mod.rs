//! Multinomial detection statistics and maximum-likelihood estimation of `(φ, 𝓘)`.
//!
//! Each simulated experiment draws `N` detection events from the model outcome
//! distribution and estimates both parameters by maximizing the multinomial
//! log-likelihood over the box `[0, π] × [0, 1]`.

mod fit;
mod mle;
mod monte_carlo;

pub use fit::{linear_fit, LinearFit};
pub use mle::{mle, MlEstimator, INDIST_GRID_POINTS, PHASE_GRID_POINTS, REFINE_TOLERANCE};
pub use monte_carlo::{
    derive_seed, experiment_rng, fisher_from_ml, monte_carlo, monte_carlo_from, MonteCarloResult,
};

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::fisher::{model_terms, Outcome, OutcomeDistribution};
use crate::fock::OccupationVector;
use crate::interferometer::ParamPoint;

/// Detection counts over the ten two-photon patterns, indexed by [`Outcome::index`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CountVector {
    counts: [u64; 10],
    total: u64,
}

impl CountVector {
    /// Requires at least one event and no events outside [`Outcome::SUPPORT`].
    pub fn new(counts: [u64; 10]) -> Result<Self> {
        if let Some(o) = Outcome::ALL
            .into_iter()
            .find(|o| !o.in_support() && counts[o.index()] > 0)
        {
            return Err(Error::UnsupportedOutcome(o.label().to_string()));
        }
        let total = counts.iter().sum();
        if total == 0 {
            return Err(Error::NoSamples);
        }
        Ok(Self { counts, total })
    }

    /// Builds counts from `(pattern, count)` pairs and checks they add up to `total`.
    pub fn from_pairs<I>(pairs: I, total: u64) -> Result<Self>
    where
        I: IntoIterator<Item = (OccupationVector, u64)>,
    {
        let mut counts = [0u64; 10];
        for (occ, n) in pairs {
            let o = Outcome::from_occupation(&occ)
                .ok_or_else(|| Error::UnsupportedOutcome(occ.to_string()))?;
            counts[o.index()] += n;
        }
        let out = Self::new(counts)?;
        if out.total != total {
            return Err(Error::CountMismatch {
                sum: out.total,
                total,
            });
        }
        Ok(out)
    }

    pub fn get(&self, outcome: Outcome) -> u64 {
        self.counts[outcome.index()]
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn as_array(&self) -> &[u64; 10] {
        &self.counts
    }

    pub fn iter(&self) -> impl Iterator<Item = (Outcome, u64)> + '_ {
        Outcome::ALL
            .into_iter()
            .map(|o| (o, self.counts[o.index()]))
    }
}

impl fmt::Display for CountVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = Outcome::SUPPORT
            .iter()
            .map(|o| format!("{}={}", o.label(), self.get(*o)))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Draws `n` categorical events from `dist` by inverting its cumulative distribution.
pub fn sample_counts<R: Rng + ?Sized>(
    dist: &OutcomeDistribution,
    n: u64,
    rng: &mut R,
) -> Result<CountVector> {
    if n == 0 {
        return Err(Error::NoSamples);
    }
    let mut cdf = [0.0f64; 10];
    let mut acc = 0.0;
    for (k, p) in dist.as_array().iter().enumerate() {
        acc += p;
        cdf[k] = acc;
    }
    // Rounding can leave the last cumulative value just under 1.
    let last = dist.as_array().iter().rposition(|&p| p > 0.0).unwrap_or(0);

    let mut counts = [0u64; 10];
    for _ in 0..n {
        let u: f64 = rng.random();
        let k = cdf.iter().position(|&c| u < c).unwrap_or(last);
        counts[k] += 1;
    }
    CountVector::new(counts)
}

/// Multinomial log-likelihood without the constant coefficient, `Σ n_m log p_m`.
///
/// Terms with zero count contribute zero; a positive count on a zero-probability
/// outcome gives `−∞`.
pub fn log_likelihood(counts: &CountVector, point: ParamPoint) -> f64 {
    let terms = model_terms(point);
    let mut total = 0.0;
    for (outcome, n) in counts.iter() {
        if n == 0 {
            continue;
        }
        let p = terms[outcome.index()].probability();
        if p <= 0.0 {
            return f64::NEG_INFINITY;
        }
        total += n as f64 * p.ln();
    }
    total
}
