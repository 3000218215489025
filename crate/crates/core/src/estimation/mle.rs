use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::estimation::{log_likelihood, CountVector};
use crate::fisher::{model_terms, Outcome};
use crate::interferometer::ParamPoint;
use crate::optim::{nelder_mead, Bounds};

/// Phase grid: step π/360 over `[0, π]`.
pub const PHASE_GRID_POINTS: usize = 361;
/// Indistinguishability grid: step 0.005 over `[0, 1]`.
pub const INDIST_GRID_POINTS: usize = 201;
/// Parameter tolerance of the simplex refinement.
pub const REFINE_TOLERANCE: f64 = 1e-6;
const MAX_REFINE_ITERATIONS: usize = 500;
const SNAP_DISTANCE: f64 = 10.0 * REFINE_TOLERANCE;

const BOX: Bounds = Bounds {
    lower: [0.0, 0.0],
    upper: [PI, 1.0],
};

fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let last = (points - 1) as f64;
    (0..points)
        .map(|k| {
            if k + 1 == points {
                hi
            } else {
                lo + (hi - lo) * k as f64 / last
            }
        })
        .collect()
}

/// Grid-then-simplex maximum-likelihood estimator over `[0, π] × [0, 1]`.
///
/// Every model probability factorises as `w(𝓘)·g(φ)²`, so the log-likelihood on
/// the grid is a phase term plus an indistinguishability term and the grid
/// maximum is found one axis at a time. The first maximum wins on each axis,
/// which breaks ties towards the smallest `φ`, then the smallest `𝓘`. The grid
/// optimum seeds a box-constrained Nelder–Mead search on the full likelihood.
#[derive(Clone, Debug)]
pub struct MlEstimator {
    phase_grid: Vec<f64>,
    indist_grid: Vec<f64>,
    /// `ln g_m(φ_k)²` for the supported outcomes.
    log_shape: Vec<[f64; 7]>,
    /// `(ln 𝓘_k, ln(1 − 𝓘_k))`.
    log_weight: Vec<(f64, f64)>,
}

impl Default for MlEstimator {
    fn default() -> Self {
        Self::new()
    }
}

impl MlEstimator {
    pub fn new() -> Self {
        let phase_grid = linspace(0.0, PI, PHASE_GRID_POINTS);
        let indist_grid = linspace(0.0, 1.0, INDIST_GRID_POINTS);
        let log_shape = phase_grid
            .iter()
            .map(|&phi| {
                // Weight 1 on both branches leaves only the shape factor.
                let terms = model_terms(ParamPoint::clamped(1.0, phi));
                let split = model_terms(ParamPoint::clamped(0.0, phi));
                let mut row = [0.0; 7];
                for (slot, o) in Outcome::SUPPORT.iter().enumerate() {
                    let t = if o.is_indistinguishable_branch() {
                        terms[o.index()]
                    } else {
                        split[o.index()]
                    };
                    row[slot] = (t.shape * t.shape).ln();
                }
                row
            })
            .collect();
        let log_weight = indist_grid
            .iter()
            .map(|&i: &f64| (i.ln(), (1.0 - i).ln()))
            .collect();
        Self {
            phase_grid,
            indist_grid,
            log_shape,
            log_weight,
        }
    }

    /// Best grid point, `(φ, 𝓘)`.
    pub fn grid_optimum(&self, counts: &CountVector) -> (f64, f64) {
        let observed: Vec<(usize, f64)> = Outcome::SUPPORT
            .iter()
            .enumerate()
            .filter_map(|(slot, o)| {
                let n = counts.get(*o);
                (n > 0).then_some((slot, n as f64))
            })
            .collect();
        let phase_idx = first_argmax(
            self.log_shape
                .iter()
                .map(|row| observed.iter().map(|&(slot, n)| n * row[slot]).sum::<f64>()),
        );

        let (bunched, split) = Outcome::SUPPORT.iter().fold((0u64, 0u64), |(b, s), o| {
            if o.is_indistinguishable_branch() {
                (b + counts.get(*o), s)
            } else {
                (b, s + counts.get(*o))
            }
        });
        let indist_idx = first_argmax(self.log_weight.iter().map(|&(li, ld)| {
            let mut v = 0.0;
            if bunched > 0 {
                v += bunched as f64 * li;
            }
            if split > 0 {
                v += split as f64 * ld;
            }
            v
        }));
        (self.phase_grid[phase_idx], self.indist_grid[indist_idx])
    }

    /// Maximum-likelihood estimate, clamped to the parameter box.
    pub fn estimate(&self, counts: &CountVector) -> ParamPoint {
        let (phase, indist) = self.grid_optimum(counts);
        let objective = |x: [f64; 2]| -log_likelihood(counts, ParamPoint::clamped(x[1], x[0]));
        let steps = [
            self.phase_grid[1] - self.phase_grid[0],
            self.indist_grid[1] - self.indist_grid[0],
        ];
        let best = nelder_mead(
            objective,
            [phase, indist],
            steps,
            BOX,
            REFINE_TOLERANCE,
            MAX_REFINE_ITERATIONS,
        );
        let x = snap_to_bounds(best.x, objective);
        ParamPoint::clamped(x[1], x[0])
    }
}

/// Moves coordinates that stopped just short of a wall onto it when that is
/// no worse, so boundary optima come out exact instead of jittering by ~1e-14.
fn snap_to_bounds(x: [f64; 2], objective: impl Fn([f64; 2]) -> f64) -> [f64; 2] {
    let mut best = (x, objective(x));
    for axis in 0..2 {
        for wall in [BOX.lower[axis], BOX.upper[axis]] {
            if (best.0[axis] - wall).abs() > SNAP_DISTANCE || best.0[axis] == wall {
                continue;
            }
            let mut y = best.0;
            y[axis] = wall;
            let value = objective(y);
            // Stationary optima on a wall tie only up to rounding.
            if value <= best.1 + 8.0 * f64::EPSILON * best.1.abs() {
                best = (y, value);
            }
        }
    }
    best.0
}

/// Index of the first maximal value; `−∞` everywhere yields 0.
fn first_argmax(values: impl Iterator<Item = f64>) -> usize {
    let mut best = (0, f64::NEG_INFINITY);
    for (k, v) in values.enumerate() {
        if v > best.1 {
            best = (k, v);
        }
    }
    best.0
}

/// Maximum-likelihood estimate with the shared default estimator.
pub fn mle(counts: &CountVector) -> ParamPoint {
    static DEFAULT: OnceLock<MlEstimator> = OnceLock::new();
    DEFAULT.get_or_init(MlEstimator::new).estimate(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fisher::outcome_distribution;

    fn counts_on(pairs: &[(Outcome, u64)]) -> CountVector {
        let mut c = [0u64; 10];
        for &(o, n) in pairs {
            c[o.index()] = n;
        }
        CountVector::new(c).unwrap()
    }

    /// Rounded expected counts `N·p` at a model point.
    fn expected_counts(i: f64, phi: f64, n: f64) -> CountVector {
        let dist = outcome_distribution(ParamPoint::new(i, phi).unwrap());
        let mut c = [0u64; 10];
        for (o, p) in dist.iter() {
            c[o.index()] = (n * p).round() as u64;
        }
        CountVector::new(c).unwrap()
    }

    #[test]
    fn grid_shape() {
        let est = MlEstimator::new();
        assert_eq!(est.phase_grid.len(), 361);
        assert_eq!(est.indist_grid.len(), 201);
        assert_eq!(*est.phase_grid.last().unwrap(), PI);
        assert!((est.phase_grid[1] - PI / 360.0).abs() < 1e-15);
        assert!((est.indist_grid[1] - 0.005).abs() < 1e-15);
    }

    #[test]
    fn recovers_generating_point() {
        let counts = expected_counts(0.5, 1.0, 1e6);
        let p = mle(&counts);
        assert!((p.phase() - 1.0).abs() < 1e-3, "{p:?}");
        assert!((p.indistinguishability() - 0.5).abs() < 1e-3, "{p:?}");
    }

    #[test]
    fn boundary_estimates() {
        let hom = mle(&counts_on(&[(Outcome::AlphaMuBetaMu, 750)]));
        assert_eq!((hom.phase(), hom.indistinguishability()), (0.0, 1.0));
        let anti = mle(&counts_on(&[(Outcome::BetaMuAlphaNu, 750)]));
        assert_eq!((anti.phase(), anti.indistinguishability()), (PI, 0.0));
    }

    #[test]
    fn indistinguishability_estimate_is_bunching_fraction() {
        let counts = counts_on(&[
            (Outcome::AlphaMuPair, 100),
            (Outcome::BetaMuPair, 90),
            (Outcome::AlphaMuBetaMu, 140),
            (Outcome::AlphaMuAlphaNu, 60),
            (Outcome::BetaMuBetaNu, 70),
            (Outcome::AlphaMuBetaNu, 200),
            (Outcome::BetaMuAlphaNu, 90),
        ]);
        let p = mle(&counts);
        assert!(
            (p.indistinguishability() - 330.0 / 750.0).abs() < 1e-6,
            "{p:?}"
        );
        // Phase stationarity: the likelihood does not improve one tolerance step away.
        let ll = log_likelihood(&counts, p);
        for d in [-1e-4, 1e-4] {
            let q = ParamPoint::clamped(p.indistinguishability(), p.phase() + d);
            assert!(log_likelihood(&counts, q) <= ll + 1e-9);
        }
    }

    #[test]
    fn refinement_never_worse_than_grid() {
        for &(i, phi) in &[(0.2, 0.3), (0.8, 2.9), (0.5, 1.57), (0.95, 0.05)] {
            let counts = expected_counts(i, phi, 750.0);
            let est = MlEstimator::new();
            let (gp, gi) = est.grid_optimum(&counts);
            let grid_ll = log_likelihood(&counts, ParamPoint::clamped(gi, gp));
            let refined = est.estimate(&counts);
            assert!(log_likelihood(&counts, refined) >= grid_ll);
        }
    }
}
