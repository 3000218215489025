//! Probe state and parameter encodings of the four-mode interferometer.
//!
//! Photons start in `|n n 0 0⟩`. The indistinguishability encoding mixes the
//! β photons into the auxiliary mode β_ν, then the phase encoding rotates each
//! `(α_χ, β_χ)` pair by `φ/2`, which is the single-particle action of
//! `exp(−iφ(J_μ + J_ν))` with `J_χ = −i(α_χ†β_χ − α_χβ_χ†)/2`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{apply_mode_unitary, FockKet, ModeUnitary, OccupationVector};

pub const ALPHA_MU: usize = 0;
pub const BETA_MU: usize = 1;
pub const ALPHA_NU: usize = 2;
pub const BETA_NU: usize = 3;
pub const NUM_MODES: usize = 4;

/// The estimation target: indistinguishability in `[0, 1]` and phase in `[0, π]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParamPoint {
    indistinguishability: f64,
    phase: f64,
}

impl ParamPoint {
    pub fn new(indistinguishability: f64, phase: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&indistinguishability) {
            return Err(Error::IndistinguishabilityOutOfRange(indistinguishability));
        }
        if !(0.0..=PI).contains(&phase) {
            return Err(Error::PhaseOutOfRange(phase));
        }
        Ok(Self {
            indistinguishability,
            phase,
        })
    }

    /// Clamps both coordinates into the parameter box.
    pub fn clamped(indistinguishability: f64, phase: f64) -> Self {
        Self {
            indistinguishability: indistinguishability.clamp(0.0, 1.0),
            phase: phase.clamp(0.0, PI),
        }
    }

    /// Shifted point used by finite differences. The phase may leave `[0, π]`
    /// by at most one step; every state map in this crate is defined there.
    pub(crate) fn shifted(self, d_phase: f64, d_indist: f64) -> Self {
        Self {
            indistinguishability: self.indistinguishability + d_indist,
            phase: self.phase + d_phase,
        }
    }

    pub fn indistinguishability(&self) -> f64 {
        self.indistinguishability
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }
}

/// Number of photon pairs; the probe carries `2n` photons.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairCount(u32);

impl PairCount {
    pub const MAX: u32 = 8;

    pub fn new(n: u32) -> Result<Self> {
        if !(1..=Self::MAX).contains(&n) {
            return Err(Error::PairCountOutOfRange(n));
        }
        Ok(Self(n))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

/// `|n n 0 0⟩`: `n` photons in each of α_μ and β_μ.
pub fn probe_state(n: PairCount) -> FockKet {
    FockKet::basis(OccupationVector::new(vec![n.0, n.0, 0, 0]).expect("four modes"))
}

/// Mode unitary encoding the indistinguishability.
///
/// α modes are untouched; `β_μ† ↦ √𝓘 β_μ† + √(1−𝓘) β_ν†` and
/// `β_ν† ↦ √(1−𝓘) β_μ† − √𝓘 β_ν†` (a reflection, so exactly unitary).
pub fn indistinguishability_unitary(indist: f64) -> Result<ModeUnitary> {
    if !(0.0..=1.0).contains(&indist) {
        return Err(Error::IndistinguishabilityOutOfRange(indist));
    }
    let (s, r) = (indist.sqrt(), (1.0 - indist).sqrt());
    let mut m = DMatrix::<Complex64>::identity(NUM_MODES, NUM_MODES);
    m[(BETA_MU, BETA_MU)] = Complex64::new(s, 0.0);
    m[(BETA_NU, BETA_MU)] = Complex64::new(r, 0.0);
    m[(BETA_MU, BETA_NU)] = Complex64::new(r, 0.0);
    m[(BETA_NU, BETA_NU)] = Complex64::new(-s, 0.0);
    ModeUnitary::new(m)
}

/// Mode action of the phase encoding: in each `(α_χ, β_χ)` pair,
/// `α† ↦ cos(φ/2) α† + sin(φ/2) β†` and `β† ↦ −sin(φ/2) α† + cos(φ/2) β†`.
pub fn phase_mode_rotation(phase: f64) -> ModeUnitary {
    let (s, c) = (phase / 2.0).sin_cos();
    let mut m = DMatrix::<Complex64>::zeros(NUM_MODES, NUM_MODES);
    for (a, b) in [(ALPHA_MU, BETA_MU), (ALPHA_NU, BETA_NU)] {
        m[(a, a)] = Complex64::new(c, 0.0);
        m[(b, a)] = Complex64::new(s, 0.0);
        m[(a, b)] = Complex64::new(-s, 0.0);
        m[(b, b)] = Complex64::new(c, 0.0);
    }
    ModeUnitary::new(m).expect("rotation blocks are orthogonal")
}

/// Fully parametrized output state `U_φ U_𝓘 |n n 0 0⟩`.
pub fn output_state(n: PairCount, point: ParamPoint) -> Result<FockKet> {
    let encoded = apply_mode_unitary(
        &indistinguishability_unitary(point.indistinguishability)?,
        &probe_state(n),
    )?;
    apply_mode_unitary(&phase_mode_rotation(point.phase), &encoded)
}

/// Closed-form two-photon output state, written out amplitude by amplitude.
///
/// Agrees with [`output_state`] for `n = 1` up to a parameter-independent sign
/// per basis ket (for the conventions used here, a global −1).
pub fn output_state_closed_form(point: ParamPoint) -> Result<FockKet> {
    let (i, phi) = (point.indistinguishability, point.phase);
    let (si, sd) = (i.sqrt(), (1.0 - i).sqrt());
    let (sin, cos) = phi.sin_cos();
    let (sin_half, cos_half) = (phi / 2.0).sin_cos();
    let bunched = si * 2f64.sqrt() * sin / 2.0;
    let entries = [
        ("2000", bunched),
        ("0200", -bunched),
        ("1100", -si * cos),
        ("1010", sd * sin / 2.0),
        ("0101", -sd * sin / 2.0),
        ("1001", -sd * cos_half * cos_half),
        ("0110", sd * sin_half * sin_half),
    ];
    let ket = FockKet::from_amplitudes(
        NUM_MODES,
        entries
            .iter()
            .map(|&(label, a)| (label.parse().expect("valid label"), Complex64::new(a, 0.0))),
    )?;
    ket.normalized()
}

/// Indistinguishability set by a half-wave plate at angle `varphi`: `sin²(2·varphi)`.
pub fn hwp_to_indistinguishability(varphi: f64) -> f64 {
    (2.0 * varphi).sin().powi(2)
}
