use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("mode index {mode} out of range for {num_modes} modes")]
    ModeOutOfRange { mode: usize, num_modes: usize },

    #[error("mode count mismatch: {left} vs {right}")]
    ModeCountMismatch { left: usize, right: usize },

    #[error("number of modes must be at least 1")]
    NoModes,

    #[error("occupation vectors do not share one photon number ({expected} vs {found})")]
    MixedPhotonNumber { expected: u32, found: u32 },

    #[error("total photon number {0} exceeds the supported maximum of {max}", max = crate::fock::MAX_PHOTONS)]
    TooManyPhotons(u32),

    #[error("matrix is not unitary (max deviation of U†U from identity: {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("matrix dimension {found} does not match {expected} modes")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty ket")]
    EmptyKet,

    #[error("state is not normalized (|norm² − 1| = {drift:e})")]
    NotNormalized { drift: f64 },

    #[error("indistinguishability {0} outside [0, 1]")]
    IndistinguishabilityOutOfRange(f64),

    #[error("phase {0} outside [0, π]")]
    PhaseOutOfRange(f64),

    #[error("pair count {0} outside [1, 8]")]
    PairCountOutOfRange(u32),

    #[error("point too close to the indistinguishability boundary for step {step}: 𝓘 = {indist}")]
    BoundaryProximity { indist: f64, step: f64 },

    #[error("finite-difference step must be positive and finite, got {0}")]
    InvalidStep(f64),

    #[error("outcome {outcome} has zero probability but non-zero derivative")]
    SingularOutcome { outcome: String },

    #[error("number of samples must be at least 1")]
    NoSamples,

    #[error("monte carlo needs at least 2 experiments, got {0}")]
    TooFewExperiments(usize),

    #[error("counts sum to {sum}, expected {total}")]
    CountMismatch { sum: u64, total: u64 },

    #[error("count on outcome {0} which is outside the model support")]
    UnsupportedOutcome(String),

    #[error("negative variance {0}")]
    NegativeVariance(f64),

    #[error("linear fit needs at least 3 points and matching lengths (got {xs} x, {ys} y)")]
    FitTooFewPoints { xs: usize, ys: usize },

    #[error("linear fit abscissae are all equal")]
    DegenerateAbscissae,
}
