use std::path::PathBuf;

use thiserror::Error;

/// Exit status for bad input: flags, config files, out-of-range parameters.
pub const EXIT_VALIDATION: u8 = 2;
/// Exit status for failures while doing the work: IO, unreadable datasets.
pub const EXIT_RUNTIME: u8 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid `{field}`: {reason}")]
    InvalidField { field: String, reason: String },
    #[error("config line {line}: {message}")]
    ConfigSyntax { line: usize, message: String },
    #[error("unknown figure `{0}` (expected estimates, fisher-vs-phase or fisher-vs-indist)")]
    UnknownFigure(String),
    #[error("dataset has no records")]
    EmptyDataset,
    #[error("{path}: {message}")]
    MalformedDataset { path: PathBuf, message: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] biphoton_core::Error),
}

impl CliError {
    pub fn invalid(field: &str, reason: impl Into<String>) -> Self {
        CliError::InvalidField {
            field: field.to_string(),
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> u8 {
        use biphoton_core::Error as E;
        match self {
            CliError::InvalidField { .. }
            | CliError::ConfigSyntax { .. }
            | CliError::UnknownFigure(_)
            | CliError::EmptyDataset => EXIT_VALIDATION,
            CliError::MalformedDataset { .. } | CliError::Io { .. } => EXIT_RUNTIME,
            CliError::Core(e) => match e {
                E::IndistinguishabilityOutOfRange(_)
                | E::PhaseOutOfRange(_)
                | E::PairCountOutOfRange(_)
                | E::BoundaryProximity { .. }
                | E::InvalidStep(_)
                | E::NoSamples
                | E::TooFewExperiments(_)
                | E::CountMismatch { .. }
                | E::UnsupportedOutcome(_) => EXIT_VALIDATION,
                _ => EXIT_RUNTIME,
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
