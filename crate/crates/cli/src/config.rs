//! Sweep configuration and its `key = value` file format.
//!
//! ```text
//! # comment
//! phases = linspace(0, pi, 45)
//! indistinguishabilities = 0.1, 0.3, 0.5, 0.7, 0.9
//! samples = 750
//! experiments = 10000
//! seed = 1
//! output = runs/sweep.csv
//! ```
//!
//! Every key is optional. Numbers may be written as `pi`, `pi/2`, `3*pi/4` and the
//! like; list entries may mix plain values with `linspace(a, b, k)`.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use crate::error::{CliError, Result};

/// Environment variable naming the directory default output files go to.
pub const OUT_DIR_ENV: &str = "BIPHOTON_OUT_DIR";
pub const DEFAULT_DATASET_NAME: &str = "sweep.csv";
pub const DEFAULT_PHASE_COUNT: usize = 45;
pub const DEFAULT_INDISTINGUISHABILITIES: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];
pub const DEFAULT_SAMPLES: u64 = 750;
pub const DEFAULT_EXPERIMENTS: usize = 10_000;
pub const DEFAULT_SEED: u64 = 1;

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub phases: Vec<f64>,
    pub indistinguishabilities: Vec<f64>,
    pub samples: u64,
    pub experiments: usize,
    pub master_seed: u64,
    pub output: PathBuf,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            phases: linspace(0.0, PI, DEFAULT_PHASE_COUNT),
            indistinguishabilities: DEFAULT_INDISTINGUISHABILITIES.to_vec(),
            samples: DEFAULT_SAMPLES,
            experiments: DEFAULT_EXPERIMENTS,
            master_seed: DEFAULT_SEED,
            output: default_output_dir().join(DEFAULT_DATASET_NAME),
        }
    }
}

/// `$BIPHOTON_OUT_DIR` when set and non-empty, else the working directory.
pub fn default_output_dir() -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir),
        _ => PathBuf::from("."),
    }
}

/// `k` evenly spaced points from `a` to `b`, both endpoints exact.
pub fn linspace(a: f64, b: f64, k: usize) -> Vec<f64> {
    match k {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..k)
            .map(|j| {
                if j == k - 1 {
                    b
                } else {
                    a + (b - a) * j as f64 / (k - 1) as f64
                }
            })
            .collect(),
    }
}

impl SweepConfig {
    pub fn cell_count(&self) -> usize {
        self.phases.len() * self.indistinguishabilities.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.phases.is_empty() {
            return Err(CliError::invalid("phases", "list is empty"));
        }
        if let Some(bad) = self.phases.iter().find(|p| !(0.0..=PI).contains(*p)) {
            return Err(CliError::invalid(
                "phases",
                format!("{bad} is outside [0, π]"),
            ));
        }
        if self.indistinguishabilities.is_empty() {
            return Err(CliError::invalid("indistinguishabilities", "list is empty"));
        }
        if let Some(bad) = self
            .indistinguishabilities
            .iter()
            .find(|i| !(0.0..=1.0).contains(*i))
        {
            return Err(CliError::invalid(
                "indistinguishabilities",
                format!("{bad} is outside [0, 1]"),
            ));
        }
        if self.samples < 1 {
            return Err(CliError::invalid("samples", "must be at least 1"));
        }
        if self.experiments < 2 {
            return Err(CliError::invalid("experiments", "must be at least 2"));
        }
        if self.output.as_os_str().is_empty() {
            return Err(CliError::invalid("output", "path is empty"));
        }
        Ok(())
    }

    /// Applies the keys in `text` on top of `self`. Relative `output` paths are
    /// taken relative to `base_dir` when given.
    pub fn apply_text(&mut self, text: &str, base_dir: Option<&Path>) -> Result<()> {
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(CliError::ConfigSyntax {
                    line,
                    message: format!("expected `key = value`, found `{content}`"),
                });
            };
            let (key, value) = (key.trim(), value.trim());
            let syntax = |message: String| CliError::ConfigSyntax { line, message };
            match key {
                "phases" => self.phases = parse_list(value).map_err(syntax)?,
                "indistinguishabilities" => {
                    self.indistinguishabilities = parse_list(value).map_err(syntax)?
                }
                "samples" => self.samples = parse_integer(value).map_err(syntax)?,
                "experiments" => self.experiments = parse_integer(value).map_err(syntax)?,
                "seed" => self.master_seed = parse_integer(value).map_err(syntax)?,
                "output" => {
                    let path = PathBuf::from(value);
                    self.output = match base_dir {
                        Some(dir) if path.is_relative() => dir.join(path),
                        _ => path,
                    };
                }
                other => return Err(syntax(format!("unknown key `{other}`"))),
            }
        }
        Ok(())
    }

    /// Defaults overlaid with the file at `path`.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let mut config = SweepConfig::default();
        config.apply_text(&text, path.parent())?;
        Ok(config)
    }
}

fn parse_integer<T: std::str::FromStr>(value: &str) -> std::result::Result<T, String> {
    let cleaned: String = value.chars().filter(|c| *c != '_').collect();
    cleaned
        .parse()
        .map_err(|_| format!("`{value}` is not a non-negative integer"))
}

/// Comma-separated scalars and `linspace(a, b, k)` groups.
pub fn parse_list(value: &str) -> std::result::Result<Vec<f64>, String> {
    let mut out = Vec::new();
    let mut rest = value.trim();
    while !rest.is_empty() {
        if let Some(args) = rest.strip_prefix("linspace") {
            let args = args.trim_start();
            let close = args
                .find(')')
                .filter(|_| args.starts_with('('))
                .ok_or_else(|| format!("malformed linspace in `{value}`"))?;
            let parts: Vec<&str> = args[1..close].split(',').map(str::trim).collect();
            let [a, b, k] = parts[..] else {
                return Err(format!(
                    "linspace takes three arguments, got `{}`",
                    &args[..=close]
                ));
            };
            let k: usize = parse_integer(k)?;
            out.extend(linspace(parse_scalar(a)?, parse_scalar(b)?, k));
            rest = args[close + 1..].trim_start();
        } else {
            let end = rest.find(',').unwrap_or(rest.len());
            out.push(parse_scalar(rest[..end].trim())?);
            rest = &rest[end..];
        }
        rest = match rest.strip_prefix(',') {
            Some(r) if r.trim().is_empty() => return Err(format!("trailing comma in `{value}`")),
            Some(r) => r.trim_start(),
            None if rest.is_empty() => rest,
            None => return Err(format!("expected `,` before `{rest}`")),
        };
    }
    Ok(out)
}

/// A float, or `pi` with an optional `c*` prefix and `/d` suffix.
pub fn parse_scalar(token: &str) -> std::result::Result<f64, String> {
    let token = token.trim();
    let bad = || format!("`{token}` is not a number");
    let value = if let Some(pos) = token.find("pi") {
        let (head, tail) = (token[..pos].trim(), token[pos + 2..].trim());
        let coef = match head.strip_suffix('*') {
            Some(c) => c.trim().parse::<f64>().map_err(|_| bad())?,
            None if head.is_empty() => 1.0,
            None if head == "-" => -1.0,
            None => return Err(bad()),
        };
        let den = match tail.strip_prefix('/') {
            Some(d) => d.trim().parse::<f64>().map_err(|_| bad())?,
            None if tail.is_empty() => 1.0,
            None => return Err(bad()),
        };
        coef * PI / den
    } else {
        token.parse::<f64>().map_err(|_| bad())?
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(bad())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn defaults_follow_the_protocol() {
        let c = SweepConfig::default();
        assert_eq!(c.phases.len(), 45);
        assert_eq!(c.phases[0], 0.0);
        assert_eq!(c.phases[44], PI);
        assert!((c.phases[22] - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(c.cell_count(), 225);
        assert_eq!((c.samples, c.experiments), (750, 10_000));
        c.validate().unwrap();
    }

    #[test]
    fn scalars() {
        assert_eq!(parse_scalar("0.25").unwrap(), 0.25);
        assert_eq!(parse_scalar("pi").unwrap(), PI);
        assert_eq!(parse_scalar("pi/2").unwrap(), FRAC_PI_2);
        assert_eq!(parse_scalar("3*pi/4").unwrap(), 3.0 * PI / 4.0);
        assert_eq!(parse_scalar("-pi").unwrap(), -PI);
        for bad in ["", "pie", "2pi", "pi/", "nan", "inf", "x"] {
            assert!(parse_scalar(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn lists_mix_values_and_linspace() {
        assert_eq!(parse_list("0.1, 0.5,0.9").unwrap(), vec![0.1, 0.5, 0.9]);
        assert_eq!(
            parse_list("0, linspace(1, 2, 3), 5").unwrap(),
            vec![0.0, 1.0, 1.5, 2.0, 5.0]
        );
        assert_eq!(
            parse_list("linspace(0, pi, 45)").unwrap(),
            linspace(0.0, PI, 45)
        );
        assert!(parse_list("").unwrap().is_empty());
        for bad in [
            "1,",
            "1 2",
            "linspace(0,1)",
            "linspace 0,1,2",
            "linspace(0,1,2",
        ] {
            assert!(parse_list(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn text_overrides_only_named_keys() {
        let mut c = SweepConfig::default();
        c.apply_text(
            "# single cell\nphases = 0.7\nindistinguishabilities = 0.5 # mid\n\nexperiments = 1_000\nseed=9\n",
            None,
        )
        .unwrap();
        assert_eq!(c.phases, vec![0.7]);
        assert_eq!(c.indistinguishabilities, vec![0.5]);
        assert_eq!(c.experiments, 1000);
        assert_eq!(c.master_seed, 9);
        assert_eq!(c.samples, DEFAULT_SAMPLES);
    }

    #[test]
    fn relative_output_resolves_against_config_dir() {
        let mut c = SweepConfig::default();
        c.apply_text("output = out/a.csv", Some(Path::new("/tmp/cfg")))
            .unwrap();
        assert_eq!(c.output, PathBuf::from("/tmp/cfg/out/a.csv"));
        c.apply_text("output = /abs.csv", Some(Path::new("/tmp/cfg")))
            .unwrap();
        assert_eq!(c.output, PathBuf::from("/abs.csv"));
    }

    #[test]
    fn syntax_errors_carry_the_line() {
        let mut c = SweepConfig::default();
        let err = c.apply_text("seed = 1\nnonsense\n", None).unwrap_err();
        assert!(
            matches!(err, CliError::ConfigSyntax { line: 2, .. }),
            "{err}"
        );
        let err = c.apply_text("colour = red", None).unwrap_err();
        assert!(err.to_string().contains("colour"));
        assert!(c.apply_text("samples = -3", None).is_err());
    }

    #[test]
    fn validation_names_the_field() {
        let field = |c: SweepConfig| match c.validate().unwrap_err() {
            CliError::InvalidField { field, .. } => field,
            other => panic!("{other}"),
        };
        let base = SweepConfig::default();
        assert_eq!(
            field(SweepConfig {
                phases: vec![],
                ..base.clone()
            }),
            "phases"
        );
        assert_eq!(
            field(SweepConfig {
                phases: vec![4.0],
                ..base.clone()
            }),
            "phases"
        );
        assert_eq!(
            field(SweepConfig {
                indistinguishabilities: vec![1.5],
                ..base.clone()
            }),
            "indistinguishabilities"
        );
        assert_eq!(
            field(SweepConfig {
                samples: 0,
                ..base.clone()
            }),
            "samples"
        );
        assert_eq!(
            field(SweepConfig {
                experiments: 1,
                ..base
            }),
            "experiments"
        );
    }

    #[test]
    fn linspace_edges() {
        assert!(linspace(0.0, 1.0, 0).is_empty());
        assert_eq!(linspace(0.3, 1.0, 1), vec![0.3]);
        assert_eq!(linspace(0.0, 1.0, 5), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    }
}
