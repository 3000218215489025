//! Sweep harness around `biphoton-core`: configuration, the sweep runner,
//! dataset files, figure tables and the Cramér–Rao report.

pub mod config;
pub mod dataset;
pub mod error;
pub mod figures;
pub mod qcr;
pub mod sweep;

pub use config::{SweepConfig, OUT_DIR_ENV};
pub use dataset::{read_dataset, write_dataset, SweepDataset, SweepRecord, HEADER, SCHEMA_VERSION};
pub use error::{CliError, Result};
pub use figures::{
    emit_figure_data, estimate_fits, EstimateFits, EstimatePoint, Figure, FigureTable,
};
pub use qcr::{qcr_check, QcrReport, Verdict};
pub use sweep::{run_sweep, run_sweep_with, CellStatus};
