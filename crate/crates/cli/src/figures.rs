//! Plain tables behind the estimate and Fisher-information plots.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use biphoton_core::{linear_fit, LinearFit};

use crate::dataset::{format_float, SweepDataset, SweepRecord};
use crate::error::{CliError, Result};
use crate::qcr::is_degenerate_phase;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Figure {
    /// Mean estimate and spread against the set value, both parameters.
    Estimates,
    /// F^ML beside the QFI for every cell.
    FisherVsPhase,
    /// F^ML averaged over phase for each 𝓘.
    FisherVsIndist,
}

impl Figure {
    pub const ALL: [Figure; 3] = [
        Figure::Estimates,
        Figure::FisherVsPhase,
        Figure::FisherVsIndist,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Figure::Estimates => "estimates",
            Figure::FisherVsPhase => "fisher-vs-phase",
            Figure::FisherVsIndist => "fisher-vs-indist",
        }
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Figure {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        Figure::ALL
            .into_iter()
            .find(|f| f.id() == s)
            .ok_or_else(|| CliError::UnknownFigure(s.to_string()))
    }
}

/// Header row, data rows, then `# key = value` summary lines.
#[derive(Clone, Debug, PartialEq)]
pub struct FigureTable {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub summary: Vec<(String, String)>,
}

impl FigureTable {
    pub fn to_text(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        for (key, value) in &self.summary {
            let _ = writeln!(out, "# {key} = {value}");
        }
        out
    }
}

type Column = fn(&SweepRecord) -> f64;

/// One parameter's estimates pooled by set value.
#[derive(Clone, Debug, PartialEq)]
pub struct EstimatePoint {
    pub set: f64,
    /// Mean over every experiment at this set value.
    pub mean: f64,
    /// Spread of those experiments: mean within-cell variance plus the variance
    /// of the cell means.
    pub std: f64,
    pub cells: usize,
}

/// Pools the cells sharing a set value of one parameter (so the other parameter
/// is averaged out), in first-appearance order.
pub fn estimate_points(
    dataset: &SweepDataset,
    set: Column,
    mean: Column,
    var: Column,
) -> Vec<EstimatePoint> {
    let mut groups: Vec<(f64, Vec<&SweepRecord>)> = Vec::new();
    for r in &dataset.records {
        match groups
            .iter_mut()
            .find(|g| g.0.to_bits() == set(r).to_bits())
        {
            Some(g) => g.1.push(r),
            None => groups.push((set(r), vec![r])),
        }
    }
    groups
        .into_iter()
        .map(|(x, cells)| {
            let n = cells.len() as f64;
            let grand = cells.iter().map(|r| mean(r)).sum::<f64>() / n;
            let within = cells.iter().map(|r| var(r)).sum::<f64>() / n;
            let between = cells.iter().map(|r| (mean(r) - grand).powi(2)).sum::<f64>() / n;
            EstimatePoint {
                set: x,
                mean: grand,
                std: (within + between).sqrt(),
                cells: cells.len(),
            }
        })
        .collect()
}

pub fn phase_points(dataset: &SweepDataset) -> Vec<EstimatePoint> {
    estimate_points(dataset, |r| r.set_phi, |r| r.est_phi, |r| r.var_phi)
}

pub fn indist_points(dataset: &SweepDataset) -> Vec<EstimatePoint> {
    estimate_points(
        dataset,
        |r| r.set_indist,
        |r| r.est_indist,
        |r| r.var_indist,
    )
}

fn fit_points(points: &[EstimatePoint]) -> Result<LinearFit> {
    let xs: Vec<f64> = points.iter().map(|p| p.set).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.mean).collect();
    Ok(linear_fit(&xs, &ys)?)
}

fn fit_cells(dataset: &SweepDataset, set: Column, mean: Column) -> Result<LinearFit> {
    let xs: Vec<f64> = dataset.records.iter().map(set).collect();
    let ys: Vec<f64> = dataset.records.iter().map(mean).collect();
    Ok(linear_fit(&xs, &ys)?)
}

/// Least-squares lines through (set value, pooled mean estimate), one point per
/// distinct set value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EstimateFits {
    pub phase: LinearFit,
    pub indist: LinearFit,
}

pub fn estimate_fits(dataset: &SweepDataset) -> Result<EstimateFits> {
    Ok(EstimateFits {
        phase: fit_points(&phase_points(dataset))?,
        indist: fit_points(&indist_points(dataset))?,
    })
}

pub fn emit_figure_data(dataset: &SweepDataset, figure: Figure) -> Result<FigureTable> {
    if dataset.is_empty() {
        return Err(CliError::EmptyDataset);
    }
    Ok(match figure {
        Figure::Estimates => estimates(dataset),
        Figure::FisherVsPhase => fisher_vs_phase(dataset),
        Figure::FisherVsIndist => fisher_vs_indist(dataset),
    })
}

/// Rows are pooled points per set value. The summary gives the fit through
/// them and, as `*_cells_*`, the fit through every cell separately.
fn estimates(dataset: &SweepDataset) -> FigureTable {
    let mut rows = Vec::new();
    let mut summary = Vec::new();
    let mut push_fit = |key: String, fit: Result<LinearFit>| match fit {
        Ok(fit) => {
            summary.push((format!("{key}_slope"), format_float(fit.slope)));
            summary.push((format!("{key}_slope_se"), format_float(fit.slope_se)));
            summary.push((format!("{key}_intercept"), format_float(fit.intercept)));
            summary.push((
                format!("{key}_intercept_se"),
                format_float(fit.intercept_se),
            ));
        }
        Err(e) => summary.push((format!("{key}_fit"), format!("unavailable ({e})"))),
    };
    let parameters: [(&str, Vec<EstimatePoint>, Column, Column); 2] = [
        ("phi", phase_points(dataset), |r| r.set_phi, |r| r.est_phi),
        (
            "indist",
            indist_points(dataset),
            |r| r.set_indist,
            |r| r.est_indist,
        ),
    ];
    for (name, points, set, mean) in parameters {
        for p in &points {
            rows.push(vec![
                name.to_string(),
                format_float(p.set),
                format_float(p.mean),
                format_float(p.std),
                p.cells.to_string(),
            ]);
        }
        push_fit(name.to_string(), fit_points(&points));
        push_fit(format!("{name}_cells"), fit_cells(dataset, set, mean));
    }
    FigureTable {
        columns: vec!["parameter", "set", "mean", "std", "cells"],
        rows,
        summary,
    }
}

fn fisher_vs_phase(dataset: &SweepDataset) -> FigureTable {
    let rows = dataset
        .records
        .iter()
        .map(|r| {
            vec![
                format_float(r.set_indist),
                format_float(r.set_phi),
                format_float(r.fml_phi.to_f64()),
                format_float(r.qfi_phi.to_f64()),
                format_float(r.fml_indist.to_f64()),
                format_float(r.qfi_indist.to_f64()),
                (if is_degenerate_phase(r.set_phi) {
                    "1"
                } else {
                    "0"
                })
                .to_string(),
            ]
        })
        .collect();
    FigureTable {
        columns: vec![
            "set_indist",
            "set_phi",
            "fml_phi",
            "qfi_phi",
            "fml_indist",
            "qfi_indist",
            "degenerate",
        ],
        rows,
        summary: Vec::new(),
    }
}

/// Mean of the finite values and the number of infinite ones.
fn finite_mean(values: impl Iterator<Item = f64>) -> (f64, usize) {
    let (mut sum, mut n, mut infinite) = (0.0, 0usize, 0usize);
    for v in values {
        if v.is_finite() {
            sum += v;
            n += 1;
        } else {
            infinite += 1;
        }
    }
    (sum / n as f64, infinite)
}

/// Per 𝓘 row: F^ML averaged over every phase and over the phases away from the
/// degenerate points. Cells whose variance vanished (infinite F^ML) are left out
/// of both means and counted in `n_inf_*`.
fn fisher_vs_indist(dataset: &SweepDataset) -> FigureTable {
    let mut order: Vec<f64> = Vec::new();
    for r in &dataset.records {
        if !order.iter().any(|i| i.to_bits() == r.set_indist.to_bits()) {
            order.push(r.set_indist);
        }
    }
    let rows = order
        .iter()
        .map(|&indist| {
            let row: Vec<&SweepRecord> = dataset
                .records
                .iter()
                .filter(|r| r.set_indist.to_bits() == indist.to_bits())
                .collect();
            let interior = || row.iter().filter(|r| !is_degenerate_phase(r.set_phi));
            let (phi_all, inf_phi) = finite_mean(row.iter().map(|r| r.fml_phi.to_f64()));
            let (phi_interior, _) = finite_mean(interior().map(|r| r.fml_phi.to_f64()));
            let (indist_all, inf_indist) = finite_mean(row.iter().map(|r| r.fml_indist.to_f64()));
            let (indist_interior, _) = finite_mean(interior().map(|r| r.fml_indist.to_f64()));
            vec![
                format_float(indist),
                format_float(phi_all),
                format_float(phi_interior),
                format_float(row[0].qfi_phi.to_f64()),
                format_float(indist_all),
                format_float(indist_interior),
                format_float(row[0].qfi_indist.to_f64()),
                row.len().to_string(),
                interior().count().to_string(),
                inf_phi.to_string(),
                inf_indist.to_string(),
            ]
        })
        .collect();
    FigureTable {
        columns: vec![
            "set_indist",
            "fml_phi_all",
            "fml_phi_interior",
            "qfi_phi",
            "fml_indist_all",
            "fml_indist_interior",
            "qfi_indist",
            "n_cells",
            "n_interior",
            "n_inf_phi",
            "n_inf_indist",
        ],
        rows,
        summary: Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use biphoton_core::Information;

    fn record(indist: f64, phi: f64, fml_phi: Information) -> SweepRecord {
        SweepRecord {
            set_indist: indist,
            set_phi: phi,
            est_indist: indist,
            est_phi: phi,
            var_indist: 0.01,
            var_phi: 0.04,
            fml_indist: Information::Finite(1.0 / (indist * (1.0 - indist))),
            fml_phi,
            qfi_indist: Information::Finite(1.0 / (indist * (1.0 - indist))),
            qfi_phi: Information::Finite(2.0 * (indist + 1.0)),
            n_samples: 750,
            n_experiments: 100,
            seed: 0,
        }
    }

    fn grid() -> SweepDataset {
        let mut records = Vec::new();
        for indist in [0.25, 0.5] {
            for phi in [0.0, 0.5, 1.0, 2.0] {
                let fml = if phi == 0.0 {
                    Information::Infinite
                } else {
                    Information::Finite(phi)
                };
                records.push(record(indist, phi, fml));
            }
        }
        SweepDataset::new(records)
    }

    #[test]
    fn figure_ids_parse() {
        for f in Figure::ALL {
            assert_eq!(f.id().parse::<Figure>().unwrap(), f);
        }
        assert!(matches!(
            "fig3".parse::<Figure>(),
            Err(CliError::UnknownFigure(_))
        ));
    }

    #[test]
    fn exact_estimates_fit_slope_one() {
        let table = emit_figure_data(&grid(), Figure::Estimates).unwrap();
        assert_eq!(
            table.columns,
            vec!["parameter", "set", "mean", "std", "cells"]
        );
        assert_eq!(table.rows.len(), 4 + 2);
        assert_eq!(
            table.rows[1],
            vec![
                "phi",
                &format_float(0.5),
                &format_float(0.5),
                &format_float(0.2),
                "2"
            ]
        );
        assert!((fit_points(&phase_points(&grid())).unwrap().slope - 1.0).abs() < 1e-12);
        assert!(matches!(estimate_fits(&grid()), Err(CliError::Core(_))));
        let text = table.to_text();
        assert!(text.starts_with("parameter,set,mean,std,cells\n"));
        assert!(text.contains("# phi_slope = 1.0000000000000000e0"));
        assert!(text.contains("# phi_cells_slope = 1.0000000000000000e0"));
        // Two 𝓘 values: too few points for the pooled 𝓘 fit.
        assert!(text.contains("# indist_fit = unavailable"));
    }

    #[test]
    fn pooled_spread_adds_between_cell_variance() {
        let mut d = grid();
        d.records[1].est_phi = 0.4;
        d.records[5].est_phi = 0.6;
        let p = &phase_points(&d)[1];
        assert_eq!((p.set, p.cells), (0.5, 2));
        assert!((p.mean - 0.5).abs() < 1e-15);
        assert!((p.std - (0.04f64 + 0.01).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn fisher_vs_indist_reports_both_averages() {
        let table = emit_figure_data(&grid(), Figure::FisherVsIndist).unwrap();
        assert_eq!(table.rows.len(), 2);
        let row = &table.rows[0];
        assert_eq!(row[0], format_float(0.25));
        // Finite cells φ = 0.5, 1, 2; the degenerate neighbourhood drops only φ = 0.
        assert_eq!(row[1], format_float(3.5 / 3.0));
        assert_eq!(row[2], format_float(3.5 / 3.0));
        assert_eq!(row[3], format_float(2.5));
        assert_eq!(&row[7..], ["4", "3", "1", "0"]);
    }

    #[test]
    fn fisher_vs_phase_has_a_row_per_cell() {
        let table = emit_figure_data(&grid(), Figure::FisherVsPhase).unwrap();
        assert_eq!(table.rows.len(), 8);
        assert_eq!(table.rows[0][2], "inf");
        assert_eq!(table.rows[0][6], "1");
        assert_eq!(table.rows[1][6], "0");
    }

    #[test]
    fn empty_dataset_is_an_error() {
        for f in Figure::ALL {
            assert!(matches!(
                emit_figure_data(&SweepDataset::default(), f),
                Err(CliError::EmptyDataset)
            ));
        }
    }
}
