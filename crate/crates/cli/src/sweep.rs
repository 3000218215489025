//! Sweep runner: one Monte Carlo per (𝓘, φ) cell, persisted after every cell.

use biphoton_core::{derive_seed, monte_carlo, qfim_closed_form, ParamPoint};

use crate::config::SweepConfig;
use crate::dataset::{read_dataset, write_dataset, SweepDataset, SweepRecord};
use crate::error::Result;

/// One cell of the grid, in dataset order (𝓘 outer, φ inner).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cell {
    pub index: usize,
    pub indist: f64,
    pub phase: f64,
    pub seed: u64,
}

pub fn cells(config: &SweepConfig) -> Vec<Cell> {
    let mut out = Vec::with_capacity(config.cell_count());
    for &indist in &config.indistinguishabilities {
        for &phase in &config.phases {
            let index = out.len();
            out.push(Cell {
                index,
                indist,
                phase,
                seed: derive_seed(config.master_seed, index as u64),
            });
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellStatus {
    Computed,
    /// Taken from an existing output file.
    Resumed,
}

/// Runs one cell; the record stores the cell seed, not the master seed.
pub fn run_cell(cell: &Cell, samples: u64, experiments: usize) -> Result<SweepRecord> {
    let point = ParamPoint::new(cell.indist, cell.phase)?;
    let result = monte_carlo(point, samples, experiments, cell.seed)?;
    let qfi = qfim_closed_form(cell.indist)?;
    Ok(SweepRecord::from_monte_carlo(
        &result,
        qfi.indist_indist(),
        qfi.phase_phase(),
    ))
}

fn matches(record: &SweepRecord, cell: &Cell, config: &SweepConfig) -> bool {
    record.set_indist.to_bits() == cell.indist.to_bits()
        && record.set_phi.to_bits() == cell.phase.to_bits()
        && record.seed == cell.seed
        && record.n_samples == config.samples
        && record.n_experiments == config.experiments
}

pub fn run_sweep(config: &SweepConfig) -> Result<SweepDataset> {
    run_sweep_with(config, |_, _, _| {})
}

/// Like [`run_sweep`], calling `progress(done, total, status)` after each cell.
///
/// Records already in `config.output` are reused while they match the grid in
/// order; the first mismatch and everything after it is recomputed. The file is
/// rewritten atomically after every computed cell.
pub fn run_sweep_with<F>(config: &SweepConfig, mut progress: F) -> Result<SweepDataset>
where
    F: FnMut(usize, usize, CellStatus),
{
    config.validate()?;
    let grid = cells(config);
    let previous = if config.output.exists() {
        read_dataset(&config.output)?.records
    } else {
        Vec::new()
    };

    let mut dataset = SweepDataset::new(Vec::with_capacity(grid.len()));
    let mut reusing = true;
    for cell in &grid {
        let reused = previous
            .get(cell.index)
            .filter(|r| reusing && matches(r, cell, config));
        let status = match reused {
            Some(record) => {
                dataset.records.push(*record);
                CellStatus::Resumed
            }
            None => {
                reusing = false;
                dataset
                    .records
                    .push(run_cell(cell, config.samples, config.experiments)?);
                write_dataset(&dataset, &config.output)?;
                CellStatus::Computed
            }
        };
        progress(cell.index + 1, grid.len(), status);
    }
    if previous.len() != dataset.len() || reusing && previous != dataset.records {
        write_dataset(&dataset, &config.output)?;
    }
    Ok(dataset)
}
