//! Per-cell comparison of the simulated variances with the quantum Cramér–Rao
//! bound: the ratio `N · Δ² · 𝓕` for each parameter.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::{self, Write as _};

use crate::dataset::{format_float, SweepDataset, SweepRecord};
use crate::error::{CliError, Result};

pub const RATIO_LOW: f64 = 0.9;
pub const RATIO_HIGH: f64 = 1.3;

/// Phases where the outcome model loses first-order sensitivity to φ.
pub const DEGENERATE_PHASES: [f64; 3] = [0.0, FRAC_PI_2, PI];

/// Cells this close to a degenerate phase are excluded. Slightly over one step
/// of the default 45-point grid, so the cells on either side go too.
pub const DEGENERATE_HALF_WIDTH: f64 = 0.08;

/// Endpoint tolerance for the divergent 𝓘 ∈ {0, 1} rows.
const INDIST_EDGE: f64 = 1e-12;

/// A neighbourhood dip counts as reproduced when `F^ML_φ / 𝓕_φφ` falls below this.
pub const DIP_THRESHOLD: f64 = 0.9;

pub fn nearest_degenerate_phase(phi: f64) -> Option<f64> {
    DEGENERATE_PHASES
        .into_iter()
        .find(|d| (phi - d).abs() <= DEGENERATE_HALF_WIDTH)
}

pub fn is_degenerate_phase(phi: f64) -> bool {
    nearest_degenerate_phase(phi).is_some()
}

pub fn has_divergent_qfi(indist: f64) -> bool {
    indist <= INDIST_EDGE || indist >= 1.0 - INDIST_EDGE
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    ExcludedDegeneratePhase,
    ExcludedDivergentQfi,
}

impl Verdict {
    fn judge(ratio: f64) -> Verdict {
        if (RATIO_LOW..=RATIO_HIGH).contains(&ratio) {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_excluded(self) -> bool {
        matches!(
            self,
            Verdict::ExcludedDegeneratePhase | Verdict::ExcludedDivergentQfi
        )
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::ExcludedDegeneratePhase => "excluded: degenerate phase",
            Verdict::ExcludedDivergentQfi => "excluded: divergent QFI",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CellCheck {
    pub set_indist: f64,
    pub set_phi: f64,
    pub ratio_phi: f64,
    pub ratio_indist: f64,
    pub phi: Verdict,
    pub indist: Verdict,
}

impl CellCheck {
    pub fn of(record: &SweepRecord) -> Self {
        let ratio_phi = record.phase_bound_ratio();
        let ratio_indist = record.indist_bound_ratio();
        let degenerate = is_degenerate_phase(record.set_phi);
        let phi = if degenerate {
            Verdict::ExcludedDegeneratePhase
        } else {
            Verdict::judge(ratio_phi)
        };
        let indist = if has_divergent_qfi(record.set_indist) {
            Verdict::ExcludedDivergentQfi
        } else if degenerate {
            Verdict::ExcludedDegeneratePhase
        } else {
            Verdict::judge(ratio_indist)
        };
        CellCheck {
            set_indist: record.set_indist,
            set_phi: record.set_phi,
            ratio_phi,
            ratio_indist,
            phi,
            indist,
        }
    }

    pub fn is_interior(&self) -> bool {
        !self.phi.is_excluded() && !self.indist.is_excluded()
    }

    pub fn passes_both(&self) -> bool {
        self.phi == Verdict::Pass && self.indist == Verdict::Pass
    }
}

/// `F^ML_φ / 𝓕_φφ` next to one degenerate phase, lowest cell per 𝓘 row,
/// averaged over the rows. The degenerate point itself is left out: there the
/// estimates collapse onto it and the variance vanishes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dip {
    pub phase: f64,
    pub depth: f64,
    pub rows: usize,
}

impl Dip {
    pub fn reproduced(&self) -> bool {
        self.depth < DIP_THRESHOLD
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QcrReport {
    pub cells: Vec<CellCheck>,
    pub interior: usize,
    pub interior_pass: usize,
    pub phi_pass: usize,
    pub indist_pass: usize,
    pub excluded_degenerate: usize,
    pub excluded_divergent: usize,
    pub dips: Vec<Dip>,
}

impl QcrReport {
    /// Share of interior cells passing for both parameters.
    pub fn interior_pass_fraction(&self) -> f64 {
        self.interior_pass as f64 / self.interior as f64
    }

    pub fn to_text(&self) -> String {
        let mut out =
            String::from("set_indist,set_phi,ratio_indist,ratio_phi,verdict_indist,verdict_phi\n");
        for c in &self.cells {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                format_float(c.set_indist),
                format_float(c.set_phi),
                format_float(c.ratio_indist),
                format_float(c.ratio_phi),
                c.indist,
                c.phi
            );
        }
        let _ = writeln!(out, "# band = [{RATIO_LOW}, {RATIO_HIGH}]");
        let _ = writeln!(out, "# cells = {}", self.cells.len());
        let _ = writeln!(out, "# interior = {}", self.interior);
        let _ = writeln!(out, "# interior_pass_both = {}", self.interior_pass);
        let _ = writeln!(
            out,
            "# interior_pass_fraction = {:.4}",
            self.interior_pass_fraction()
        );
        let _ = writeln!(out, "# interior_pass_phi = {}", self.phi_pass);
        let _ = writeln!(out, "# interior_pass_indist = {}", self.indist_pass);
        let _ = writeln!(
            out,
            "# excluded_degenerate_phase = {}",
            self.excluded_degenerate
        );
        let _ = writeln!(
            out,
            "# excluded_divergent_qfi = {}",
            self.excluded_divergent
        );
        for d in &self.dips {
            let _ = writeln!(
                out,
                "# dip phi={:.6} depth={:.4} rows={} reproduced={}",
                d.phase,
                d.depth,
                d.rows,
                if d.reproduced() { "yes" } else { "no" }
            );
        }
        out
    }
}

pub fn qcr_check(dataset: &SweepDataset) -> Result<QcrReport> {
    if dataset.is_empty() {
        return Err(CliError::EmptyDataset);
    }
    let cells: Vec<CellCheck> = dataset.records.iter().map(CellCheck::of).collect();
    let interior: Vec<&CellCheck> = cells.iter().filter(|c| c.is_interior()).collect();
    let count = |v: fn(&CellCheck) -> bool| cells.iter().filter(|c| v(c)).count();
    Ok(QcrReport {
        interior: interior.len(),
        interior_pass: interior.iter().filter(|c| c.passes_both()).count(),
        phi_pass: interior.iter().filter(|c| c.phi == Verdict::Pass).count(),
        indist_pass: interior
            .iter()
            .filter(|c| c.indist == Verdict::Pass)
            .count(),
        excluded_degenerate: count(|c| c.phi == Verdict::ExcludedDegeneratePhase),
        excluded_divergent: count(|c| c.indist == Verdict::ExcludedDivergentQfi),
        dips: dips(dataset),
        cells,
    })
}

fn dips(dataset: &SweepDataset) -> Vec<Dip> {
    let mut out = Vec::new();
    for phase in DEGENERATE_PHASES {
        let mut rows: Vec<(u64, f64)> = Vec::new();
        for r in &dataset.records {
            let near = nearest_degenerate_phase(r.set_phi) == Some(phase);
            if !near || r.set_phi == phase || has_divergent_qfi(r.set_indist) {
                continue;
            }
            let ratio = r.fml_phi.to_f64() / r.qfi_phi.to_f64();
            match rows.iter_mut().find(|(i, _)| *i == r.set_indist.to_bits()) {
                Some(row) => row.1 = row.1.min(ratio),
                None => rows.push((r.set_indist.to_bits(), ratio)),
            }
        }
        if !rows.is_empty() {
            out.push(Dip {
                phase,
                depth: rows.iter().map(|r| r.1).sum::<f64>() / rows.len() as f64,
                rows: rows.len(),
            });
        }
    }
    out
}
