//! Sweep datasets and their CSV form.
//!
//! The header row comes first and the last line is `# schema_version=1`.
//! Floats use 17 significant digits so a reload reproduces every bit; infinite
//! information is written `inf`.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use biphoton_core::{Information, MonteCarloResult};

use crate::error::{CliError, Result};

pub const SCHEMA_VERSION: u32 = 1;
pub const HEADER: &str = "set_indist,set_phi,est_indist,est_phi,var_indist,var_phi,fml_indist,fml_phi,qfi_indist,qfi_phi,n_samples,n_experiments,seed";
const SCHEMA_PREFIX: &str = "# schema_version=";
const COLUMNS: usize = 13;

/// One (𝓘, φ) cell of a sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRecord {
    pub set_indist: f64,
    pub set_phi: f64,
    pub est_indist: f64,
    pub est_phi: f64,
    pub var_indist: f64,
    pub var_phi: f64,
    pub fml_indist: Information,
    pub fml_phi: Information,
    pub qfi_indist: Information,
    pub qfi_phi: Information,
    pub n_samples: u64,
    pub n_experiments: usize,
    /// Seed the cell's Monte Carlo ran with.
    pub seed: u64,
}

impl SweepRecord {
    pub fn from_monte_carlo(
        result: &MonteCarloResult,
        qfi_indist: Information,
        qfi_phi: Information,
    ) -> Self {
        SweepRecord {
            set_indist: result.set_point.indistinguishability(),
            set_phi: result.set_point.phase(),
            est_indist: result.mean_indist,
            est_phi: result.mean_phase,
            var_indist: result.var_indist,
            var_phi: result.var_phase,
            fml_indist: result.fisher_indist,
            fml_phi: result.fisher_phase,
            qfi_indist,
            qfi_phi,
            n_samples: result.samples,
            n_experiments: result.experiments,
            seed: result.master_seed,
        }
    }

    /// `N · Δ²φ · 𝓕_φφ`.
    pub fn phase_bound_ratio(&self) -> f64 {
        self.n_samples as f64 * self.var_phi * self.qfi_phi.to_f64()
    }

    /// `N · Δ²𝓘 · 𝓕_𝓘𝓘`.
    pub fn indist_bound_ratio(&self) -> f64 {
        self.n_samples as f64 * self.var_indist * self.qfi_indist.to_f64()
    }

    fn write_row(&self, out: &mut String) {
        let floats = [
            self.set_indist,
            self.set_phi,
            self.est_indist,
            self.est_phi,
            self.var_indist,
            self.var_phi,
            self.fml_indist.to_f64(),
            self.fml_phi.to_f64(),
            self.qfi_indist.to_f64(),
            self.qfi_phi.to_f64(),
        ];
        for v in floats {
            out.push_str(&format_float(v));
            out.push(',');
        }
        let _ = writeln!(
            out,
            "{},{},{}",
            self.n_samples, self.n_experiments, self.seed
        );
    }

    fn parse_row(line: &str) -> std::result::Result<Self, String> {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != COLUMNS {
            return Err(format!("expected {COLUMNS} fields, found {}", fields.len()));
        }
        let float = |k: usize| -> std::result::Result<f64, String> {
            let v: f64 = fields[k]
                .parse()
                .map_err(|_| format!("column {}: `{}` is not a number", k + 1, fields[k]))?;
            if v.is_nan() {
                return Err(format!("column {}: NaN", k + 1));
            }
            Ok(v)
        };
        let info = |k: usize| -> std::result::Result<Information, String> {
            let v = float(k)?;
            match v {
                f64::INFINITY => Ok(Information::Infinite),
                v if v.is_finite() => Ok(Information::Finite(v)),
                _ => Err(format!(
                    "column {}: `{}` is not valid information",
                    k + 1,
                    fields[k]
                )),
            }
        };
        let finite = |k: usize| -> std::result::Result<f64, String> {
            let v = float(k)?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(format!("column {}: value must be finite", k + 1))
            }
        };
        let integer = |k: usize| -> std::result::Result<u64, String> {
            fields[k]
                .parse()
                .map_err(|_| format!("column {}: `{}` is not an integer", k + 1, fields[k]))
        };
        Ok(SweepRecord {
            set_indist: finite(0)?,
            set_phi: finite(1)?,
            est_indist: finite(2)?,
            est_phi: finite(3)?,
            var_indist: finite(4)?,
            var_phi: finite(5)?,
            fml_indist: info(6)?,
            fml_phi: info(7)?,
            qfi_indist: info(8)?,
            qfi_phi: info(9)?,
            n_samples: integer(10)?,
            n_experiments: integer(11)? as usize,
            seed: integer(12)?,
        })
    }
}

/// 17 significant digits; `inf` for +∞.
pub fn format_float(v: f64) -> String {
    if v == f64::INFINITY {
        "inf".to_string()
    } else {
        format!("{v:.16e}")
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SweepDataset {
    pub records: Vec<SweepRecord>,
}

impl SweepDataset {
    pub fn new(records: Vec<SweepRecord>) -> Self {
        SweepDataset { records }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(256 * (self.records.len() + 2));
        out.push_str(HEADER);
        out.push('\n');
        for r in &self.records {
            r.write_row(&mut out);
        }
        let _ = writeln!(out, "{SCHEMA_PREFIX}{SCHEMA_VERSION}");
        out
    }

    pub fn from_csv(text: &str) -> std::result::Result<Self, String> {
        let mut lines = text.split('\n').enumerate();
        match lines.next() {
            Some((_, HEADER)) => {}
            Some((_, other)) => return Err(format!("unexpected header `{other}`")),
            None => return Err("file is empty".to_string()),
        }
        let mut records = Vec::new();
        let mut version = None;
        for (n, line) in lines {
            if line.is_empty() {
                continue;
            }
            if version.is_some() {
                return Err(format!("line {}: content after schema stamp", n + 1));
            }
            if let Some(v) = line.strip_prefix(SCHEMA_PREFIX) {
                version = Some(
                    v.parse::<u32>()
                        .map_err(|_| format!("line {}: bad schema stamp", n + 1))?,
                );
                continue;
            }
            if line.ends_with('\r') {
                return Err(format!("line {}: CRLF line ending", n + 1));
            }
            records.push(SweepRecord::parse_row(line).map_err(|e| format!("line {}: {e}", n + 1))?);
        }
        match version {
            Some(SCHEMA_VERSION) => Ok(SweepDataset { records }),
            Some(v) => Err(format!(
                "schema version {v}, this build reads {SCHEMA_VERSION}"
            )),
            None => Err("missing schema stamp".to_string()),
        }
    }
}

/// Writes `text` to `path` through a sibling temp file and a rename, so readers
/// never see a partial file.
pub fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let tmp = temp_path(path);
    let result = (|| {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)?;
        }
        let mut file = std::fs::File::create(&tmp)?;
        file.write_all(text.as_bytes())?;
        file.sync_all()?;
        std::fs::rename(&tmp, path)
    })();
    result.map_err(|e| {
        let _ = std::fs::remove_file(&tmp);
        CliError::io(path, e)
    })
}

fn temp_path(path: &Path) -> PathBuf {
    let mut name = std::ffi::OsString::from(".");
    name.push(path.file_name().unwrap_or_default());
    name.push(".tmp");
    path.with_file_name(name)
}

pub fn write_dataset(dataset: &SweepDataset, path: &Path) -> Result<()> {
    write_atomic(path, &dataset.to_csv())
}

pub fn read_dataset(path: &Path) -> Result<SweepDataset> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    SweepDataset::from_csv(&text).map_err(|message| CliError::MalformedDataset {
        path: path.to_path_buf(),
        message,
    })
}
