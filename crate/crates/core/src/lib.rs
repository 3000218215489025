//! Simulation and estimation toolkit for a two-photon, four-mode interferometer in
//! which an interferometric phase and the indistinguishability of the photon pair
//! are estimated simultaneously.
//!
//! The crate is organised bottom-up:
//!
//! * [`fock`]: sparse bosonic Fock states and the lifting of mode unitaries.
//! * [`interferometer`]: probe state, indistinguishability encoding, phase encoding.
//! * [`fisher`]: quantum and classical Fisher information matrices.
//! * [`estimation`]: multinomial sampling, maximum likelihood and Monte Carlo.
//!
//! Mode indices follow the ket labels `|α_μ β_μ α_ν β_ν⟩`: 0 = α_μ, 1 = β_μ,
//! 2 = α_ν, 3 = β_ν.

pub mod error;
pub mod estimation;
pub mod fisher;
pub mod fock;
pub mod interferometer;
mod optim;

pub use error::{Error, Result};
pub use estimation::{
    derive_seed, fisher_from_ml, linear_fit, log_likelihood, mle, monte_carlo, sample_counts,
    CountVector, LinearFit, MlEstimator, MonteCarloResult,
};
pub use fisher::{
    cfim, outcome_distribution, qfi_from_generator, qfim_closed_form, qfim_pure_numeric,
    Derivative, FisherMatrix, Information, Outcome, OutcomeDistribution,
};
pub use fock::{apply_mode_unitary, enumerate_basis, FockKet, ModeUnitary, OccupationVector};
pub use interferometer::{
    hwp_to_indistinguishability, indistinguishability_unitary, output_state,
    output_state_closed_form, phase_mode_rotation, probe_state, PairCount, ParamPoint,
};

pub use num_complex::Complex64;
