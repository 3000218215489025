//! Quantum and classical Fisher information for the `(φ, 𝓘)` problem.
//!
//! All matrices use the index order `(φ, 𝓘)`: entry `[0][0]` is the phase
//! information, `[1][1]` the indistinguishability information.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{apply_one_body, enumerate_basis, FockKet, OccupationVector};
use crate::interferometer::{ParamPoint, ALPHA_MU, ALPHA_NU, BETA_MU, BETA_NU, NUM_MODES};

/// Largest norm drift tolerated from a user-supplied state map.
pub const STATE_NORM_DRIFT: f64 = 1e-9;

/// Default central-difference step.
pub const DEFAULT_STEP: f64 = 1e-5;

/// A Fisher information value that may diverge.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Information {
    Finite(f64),
    Infinite,
}

impl Information {
    pub fn finite(self) -> Option<f64> {
        match self {
            Information::Finite(v) => Some(v),
            Information::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Information::Infinite)
    }

    /// IEEE view: `Infinite` becomes `f64::INFINITY`.
    pub fn to_f64(self) -> f64 {
        self.finite().unwrap_or(f64::INFINITY)
    }
}

impl fmt::Display for Information {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Information::Finite(v) => write!(f, "{v}"),
            Information::Infinite => f.write_str("inf"),
        }
    }
}

/// 2×2 Fisher information matrix in `(φ, 𝓘)` order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FisherMatrix {
    entries: [[Information; 2]; 2],
}

impl FisherMatrix {
    pub const PHASE: usize = 0;
    pub const INDIST: usize = 1;

    pub fn new(entries: [[Information; 2]; 2]) -> Self {
        Self { entries }
    }

    pub fn from_finite(entries: [[f64; 2]; 2]) -> Self {
        Self::new(entries.map(|row| row.map(Information::Finite)))
    }

    pub fn get(&self, i: usize, j: usize) -> Information {
        self.entries[i][j]
    }

    pub fn phase_phase(&self) -> Information {
        self.entries[0][0]
    }

    pub fn indist_indist(&self) -> Information {
        self.entries[1][1]
    }

    pub fn phase_indist(&self) -> Information {
        self.entries[0][1]
    }

    /// All four entries, if none diverges.
    pub fn as_finite(&self) -> Option<[[f64; 2]; 2]> {
        let [[a, b], [c, d]] = self.entries;
        Some([[a.finite()?, b.finite()?], [c.finite()?, d.finite()?]])
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        match (self.entries[0][1], self.entries[1][0]) {
            (Information::Finite(a), Information::Finite(b)) => (a - b).abs() <= tol,
            (a, b) => a == b,
        }
    }

    /// Positive semidefinite to within `tol`; divergent matrices are only checked
    /// on their finite diagonal entries.
    pub fn is_positive_semidefinite(&self, tol: f64) -> bool {
        let diag_ok = [self.entries[0][0], self.entries[1][1]]
            .iter()
            .all(|e| e.finite().is_none_or(|v| v >= -tol));
        match self.as_finite() {
            Some(m) => diag_ok && m[0][0] * m[1][1] - m[0][1] * m[1][0] >= -tol,
            None => diag_ok,
        }
    }
}

/// The ten two-photon detection patterns over `|α_μ β_μ α_ν β_ν⟩`, in canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Outcome {
    AlphaMuPair,
    AlphaMuBetaMu,
    AlphaMuAlphaNu,
    AlphaMuBetaNu,
    BetaMuPair,
    BetaMuAlphaNu,
    BetaMuBetaNu,
    AlphaNuPair,
    AlphaNuBetaNu,
    BetaNuPair,
}

impl Outcome {
    pub const ALL: [Outcome; 10] = [
        Outcome::AlphaMuPair,
        Outcome::AlphaMuBetaMu,
        Outcome::AlphaMuAlphaNu,
        Outcome::AlphaMuBetaNu,
        Outcome::BetaMuPair,
        Outcome::BetaMuAlphaNu,
        Outcome::BetaMuBetaNu,
        Outcome::AlphaNuPair,
        Outcome::AlphaNuBetaNu,
        Outcome::BetaNuPair,
    ];

    /// Patterns with non-zero model probability somewhere in the parameter box.
    pub const SUPPORT: [Outcome; 7] = [
        Outcome::AlphaMuPair,
        Outcome::AlphaMuBetaMu,
        Outcome::AlphaMuAlphaNu,
        Outcome::AlphaMuBetaNu,
        Outcome::BetaMuPair,
        Outcome::BetaMuAlphaNu,
        Outcome::BetaMuBetaNu,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            Outcome::AlphaMuPair => "2000",
            Outcome::AlphaMuBetaMu => "1100",
            Outcome::AlphaMuAlphaNu => "1010",
            Outcome::AlphaMuBetaNu => "1001",
            Outcome::BetaMuPair => "0200",
            Outcome::BetaMuAlphaNu => "0110",
            Outcome::BetaMuBetaNu => "0101",
            Outcome::AlphaNuPair => "0020",
            Outcome::AlphaNuBetaNu => "0011",
            Outcome::BetaNuPair => "0002",
        }
    }

    pub fn occupation(self) -> OccupationVector {
        self.label().parse().expect("static label")
    }

    pub fn from_occupation(occ: &OccupationVector) -> Option<Outcome> {
        Outcome::ALL.into_iter().find(|o| &o.occupation() == occ)
    }

    pub fn in_support(self) -> bool {
        self.index() < Outcome::SUPPORT.len()
    }

    /// Whether the probability carries the factor `𝓘` (bunching branch) rather than `1 − 𝓘`.
    pub fn is_indistinguishable_branch(self) -> bool {
        matches!(
            self,
            Outcome::AlphaMuPair | Outcome::BetaMuPair | Outcome::AlphaMuBetaMu
        )
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Outcome probabilities, indexed by [`Outcome::index`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OutcomeDistribution {
    probs: [f64; 10],
}

impl OutcomeDistribution {
    /// Checks `0 ≤ p ≤ 1`, `Σp = 1` to 1e-12, and zero mass off the support.
    pub fn new(probs: [f64; 10]) -> Result<Self> {
        let sum: f64 = probs.iter().sum();
        if probs.iter().any(|p| !(0.0..=1.0).contains(p)) || (sum - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized {
                drift: (sum - 1.0).abs(),
            });
        }
        if let Some(o) = Outcome::ALL
            .into_iter()
            .find(|o| !o.in_support() && probs[o.index()] != 0.0)
        {
            return Err(Error::UnsupportedOutcome(o.label().to_string()));
        }
        Ok(Self { probs })
    }

    /// Squared amplitudes of a two-photon, four-mode ket on the ten patterns.
    pub fn from_state(ket: &FockKet) -> Self {
        let mut probs = [0.0; 10];
        for o in Outcome::ALL {
            probs[o.index()] = ket.amplitude(&o.occupation()).norm_sqr();
        }
        Self { probs }
    }

    pub fn probability(&self, outcome: Outcome) -> f64 {
        self.probs[outcome.index()]
    }

    pub fn get(&self, occ: &OccupationVector) -> Option<f64> {
        Outcome::from_occupation(occ).map(|o| self.probability(o))
    }

    pub fn as_array(&self) -> &[f64; 10] {
        &self.probs
    }

    pub fn iter(&self) -> impl Iterator<Item = (Outcome, f64)> + '_ {
        Outcome::ALL.into_iter().map(|o| (o, self.probs[o.index()]))
    }
}

/// Each outcome probability factorises as `p = w(𝓘) · g(φ)²` with `w = 𝓘` on the
/// bunching branch and `w = 1 − 𝓘` otherwise.
#[derive(Clone, Copy, Debug)]
pub(crate) struct ModelTerm {
    pub weight: f64,
    /// `∂w/∂𝓘`, either `+1` or `−1`.
    pub weight_slope: f64,
    pub shape: f64,
    /// `∂g/∂φ`.
    pub shape_slope: f64,
}

impl ModelTerm {
    pub fn probability(&self) -> f64 {
        self.weight * self.shape * self.shape
    }

    /// `(∂_φ p, ∂_𝓘 p)`.
    pub fn gradient(&self) -> [f64; 2] {
        [
            2.0 * self.weight * self.shape * self.shape_slope,
            self.weight_slope * self.shape * self.shape,
        ]
    }
}

pub(crate) fn model_terms(point: ParamPoint) -> [ModelTerm; 10] {
    let i = point.indistinguishability();
    let (s, c) = point.phase().sin_cos();
    let (sh, ch) = (point.phase() / 2.0).sin_cos();
    let bunching = |shape: f64, shape_slope: f64| ModelTerm {
        weight: i,
        weight_slope: 1.0,
        shape,
        shape_slope,
    };
    let split = |shape: f64, shape_slope: f64| ModelTerm {
        weight: 1.0 - i,
        weight_slope: -1.0,
        shape,
        shape_slope,
    };
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = [split(0.0, 0.0); 10];
    out[Outcome::AlphaMuPair.index()] = bunching(r * s, r * c);
    out[Outcome::BetaMuPair.index()] = bunching(r * s, r * c);
    out[Outcome::AlphaMuBetaMu.index()] = bunching(c, -s);
    out[Outcome::AlphaMuAlphaNu.index()] = split(s / 2.0, c / 2.0);
    out[Outcome::BetaMuBetaNu.index()] = split(s / 2.0, c / 2.0);
    out[Outcome::AlphaMuBetaNu.index()] = split(ch * ch, -sh * ch);
    out[Outcome::BetaMuAlphaNu.index()] = split(sh * sh, sh * ch);
    out
}

/// Closed-form outcome probabilities of the two-photon interferometer.
pub fn outcome_distribution(point: ParamPoint) -> OutcomeDistribution {
    OutcomeDistribution {
        probs: model_terms(point).map(|t| t.probability()),
    }
}

/// How [`cfim`] obtains probability derivatives.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Derivative {
    Analytic,
    Numeric { step: f64 },
}

fn check_step(step: f64) -> Result<()> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidStep(step));
    }
    Ok(())
}

fn check_interior(point: ParamPoint, step: f64) -> Result<()> {
    let i = point.indistinguishability();
    if i < 10.0 * step || i > 1.0 - 10.0 * step {
        return Err(Error::BoundaryProximity { indist: i, step });
    }
    Ok(())
}

/// Classical Fisher information `Σ_m ∂_i p ∂_j p / p` of photon counting on the
/// ten patterns.
///
/// Outcomes with `p = 0` enter through their limit. Writing `p = w(𝓘)·g(φ)²`,
/// the term equals `4 ∂_i√p ∂_j√p`, which stays finite where `g` vanishes
/// (e.g. the bunching outcomes at `φ = 0`) and diverges in the `𝓘𝓘` entry where
/// `w` vanishes (`𝓘 ∈ {0, 1}`), which is flagged [`Information::Infinite`].
/// Numeric mode takes the same limit as `2 ∂²_φ p` from a second difference.
pub fn cfim(point: ParamPoint, mode: Derivative) -> Result<FisherMatrix> {
    let mut sums = [[0.0f64; 2]; 2];
    let mut divergent = false;
    let accumulate = |sums: &mut [[f64; 2]; 2], p: f64, grad: [f64; 2]| {
        for i in 0..2 {
            for j in 0..2 {
                sums[i][j] += grad[i] * grad[j] / p;
            }
        }
    };

    match mode {
        Derivative::Analytic => {
            for term in model_terms(point) {
                let p = term.probability();
                if p > 0.0 {
                    accumulate(&mut sums, p, term.gradient());
                    continue;
                }
                sums[0][0] += 4.0 * term.weight * term.shape_slope * term.shape_slope;
                let cross = 2.0 * term.weight_slope * term.shape * term.shape_slope;
                sums[0][1] += cross;
                sums[1][0] += cross;
                if term.shape != 0.0 {
                    divergent = true;
                }
            }
        }
        Derivative::Numeric { step } => {
            check_step(step)?;
            check_interior(point, step)?;
            let at = |dp: f64, di: f64| outcome_distribution(point.shifted(dp, di)).probs;
            let centre = at(0.0, 0.0);
            let (pp, pm) = (at(step, 0.0), at(-step, 0.0));
            let (ip, im) = (at(0.0, step), at(0.0, -step));
            for k in 0..10 {
                let grad = [
                    (pp[k] - pm[k]) / (2.0 * step),
                    (ip[k] - im[k]) / (2.0 * step),
                ];
                if centre[k] > 0.0 {
                    accumulate(&mut sums, centre[k], grad);
                } else if grad.iter().any(|g| *g != 0.0) {
                    return Err(Error::SingularOutcome {
                        outcome: Outcome::ALL[k].label().to_string(),
                    });
                } else {
                    sums[0][0] += 2.0 * (pp[k] - 2.0 * centre[k] + pm[k]) / (step * step);
                }
            }
        }
    }

    let mut matrix = FisherMatrix::from_finite(sums);
    if divergent {
        matrix.entries[1][1] = Information::Infinite;
    }
    Ok(matrix)
}

/// `diag(2(𝓘+1), 1/(𝓘(1−𝓘)))`, the second entry divergent at `𝓘 ∈ {0, 1}`.
pub fn qfim_closed_form(indist: f64) -> Result<FisherMatrix> {
    if !(0.0..=1.0).contains(&indist) {
        return Err(Error::IndistinguishabilityOutOfRange(indist));
    }
    let ii = if indist == 0.0 || indist == 1.0 {
        Information::Infinite
    } else {
        Information::Finite(1.0 / (indist * (1.0 - indist)))
    };
    Ok(FisherMatrix::new([
        [
            Information::Finite(2.0 * (indist + 1.0)),
            Information::Finite(0.0),
        ],
        [Information::Finite(0.0), ii],
    ]))
}

/// Pure-state QFIM `4 Re(⟨∂_iΨ|∂_jΨ⟩ − ⟨∂_iΨ|Ψ⟩⟨Ψ|∂_jΨ⟩)` with central-difference
/// derivatives of the amplitudes.
///
/// `state_fn` must be a pure function. The differencing points may have a phase
/// just outside `[0, π]`.
pub fn qfim_pure_numeric<F>(state_fn: F, point: ParamPoint, step: f64) -> Result<FisherMatrix>
where
    F: Fn(ParamPoint) -> Result<FockKet>,
{
    check_step(step)?;
    check_interior(point, step)?;

    let centre = state_fn(point)?;
    let photons = centre.photon_number().ok_or(Error::EmptyKet)?;
    let basis = enumerate_basis(centre.num_modes(), photons)?;
    let dense = |ket: FockKet| -> Result<Vec<Complex64>> {
        let drift = (ket.norm_sqr() - 1.0).abs();
        if drift > STATE_NORM_DRIFT {
            return Err(Error::NotNormalized { drift });
        }
        Ok(ket.to_dense(&basis))
    };
    let psi = dense(centre)?;
    let derivative = |d_phase: f64, d_indist: f64| -> Result<Vec<Complex64>> {
        let plus = dense(state_fn(point.shifted(d_phase, d_indist))?)?;
        let minus = dense(state_fn(point.shifted(-d_phase, -d_indist))?)?;
        Ok(plus
            .iter()
            .zip(&minus)
            .map(|(p, m)| (p - m) / (2.0 * step))
            .collect())
    };
    let grads = [derivative(step, 0.0)?, derivative(0.0, step)?];

    let dot = |a: &[Complex64], b: &[Complex64]| -> Complex64 {
        a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
    };
    let overlaps = [dot(&grads[0], &psi), dot(&grads[1], &psi)];
    let mut raw = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let value = dot(&grads[i], &grads[j]) - overlaps[i] * overlaps[j].conj();
            raw[i][j] = 4.0 * value.re;
        }
    }
    let off = 0.5 * (raw[0][1] + raw[1][0]);
    Ok(FisherMatrix::from_finite([
        [raw[0][0], off],
        [off, raw[1][1]],
    ]))
}

/// One-body matrix of `H = J_μ + J_ν` with `J_χ = −i(α_χ†β_χ − α_χβ_χ†)/2`.
pub fn phase_generator() -> DMatrix<Complex64> {
    let mut h = DMatrix::<Complex64>::zeros(NUM_MODES, NUM_MODES);
    for (a, b) in [(ALPHA_MU, BETA_MU), (ALPHA_NU, BETA_NU)] {
        h[(a, b)] = Complex64::new(0.0, -0.5);
        h[(b, a)] = Complex64::new(0.0, 0.5);
    }
    h
}

/// Single-parameter phase QFI `4 Var(H)` for a normalized four-mode ket.
pub fn qfi_from_generator(ket: &FockKet) -> Result<f64> {
    if ket.num_modes() != NUM_MODES {
        return Err(Error::ModeCountMismatch {
            left: NUM_MODES,
            right: ket.num_modes(),
        });
    }
    let drift = (ket.norm_sqr() - 1.0).abs();
    if drift > STATE_NORM_DRIFT {
        return Err(Error::NotNormalized { drift });
    }
    let h_psi = apply_one_body(&phase_generator(), ket)?;
    let mean = ket.inner(&h_psi)?.re;
    let second = h_psi.norm_sqr();
    Ok((4.0 * (second - mean * mean)).max(0.0))
}
