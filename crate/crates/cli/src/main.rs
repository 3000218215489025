use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use biphoton_cli::config::parse_scalar;
use biphoton_cli::dataset::{format_float, write_atomic, SweepDataset, SweepRecord};
use biphoton_cli::{
    emit_figure_data, qcr_check, read_dataset, run_sweep_with, CellStatus, CliError, Figure,
    Result, SweepConfig,
};
use biphoton_core::fisher::DEFAULT_STEP;
use biphoton_core::{
    apply_mode_unitary, indistinguishability_unitary, mle, monte_carlo, outcome_distribution,
    output_state, probe_state, qfi_from_generator, qfim_closed_form, qfim_pure_numeric,
    CountVector, FisherMatrix, Outcome, PairCount, ParamPoint,
};
use clap::{Args, Parser, Subcommand};

/// Two-photon phase and indistinguishability estimation: model queries,
/// Monte Carlo sweeps and the tables built from them.
#[derive(Parser)]
#[command(name = "biphoton", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Master seed for Monte Carlo runs.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output file. Defaults to stdout, or for `sweep` to sweep.csv in $BIPHOTON_OUT_DIR.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// `key = value` configuration file; flags take precedence over it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct PointArgs {
    /// Indistinguishability in [0, 1].
    #[arg(long)]
    indist: f64,
    /// Phase in [0, π]; accepts forms like `pi/4`.
    #[arg(long, value_parser = parse_scalar)]
    phase: f64,
}

impl PointArgs {
    fn point(&self) -> Result<ParamPoint> {
        Ok(ParamPoint::new(self.indist, self.phase)?)
    }
}

#[derive(Args)]
struct RunArgs {
    /// Detected pairs per experiment (N).
    #[arg(long)]
    samples: Option<u64>,
    /// Repeated experiments (M).
    #[arg(long)]
    experiments: Option<usize>,
    /// Worker threads; results do not depend on it.
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,
}

#[derive(Subcommand)]
enum Command {
    /// Quantum Fisher information matrix, numeric and closed form.
    Qfim {
        #[command(flatten)]
        point: PointArgs,
        /// Photon pairs in the probe.
        #[arg(long, default_value_t = 1)]
        pairs: u32,
        /// Finite-difference step.
        #[arg(long, default_value_t = DEFAULT_STEP)]
        step: f64,
    },
    /// Outcome probabilities at one parameter point.
    Probs {
        #[command(flatten)]
        point: PointArgs,
    },
    /// Monte Carlo at one parameter point, written as a one-record dataset.
    Simulate {
        #[command(flatten)]
        point: PointArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Maximum-likelihood estimate from outcome counts.
    Mle {
        /// `2000=12,1100=30,...`, or 7 or 10 counts in canonical order.
        #[arg(long)]
        counts: String,
    },
    /// Monte Carlo over a grid of (𝓘, φ) cells, resumable.
    Sweep {
        /// Phase list, e.g. `linspace(0, pi, 45)`.
        #[arg(long)]
        phases: Option<String>,
        /// Indistinguishability list.
        #[arg(long)]
        indist: Option<String>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Table for one figure: estimates, fisher-vs-phase or fisher-vs-indist.
    FigureData {
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long)]
        figure: String,
    },
    /// Ratio of simulated variance to the quantum Cramér–Rao bound per cell.
    QcrCheck {
        #[arg(long)]
        dataset: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let mut config = match &cli.config {
        Some(path) => SweepConfig::from_file(path)?,
        None => SweepConfig::default(),
    };
    if let Some(seed) = cli.seed {
        config.master_seed = seed;
    }
    let emit = |text: String| -> Result<()> {
        match &cli.out {
            Some(path) => write_atomic(path, &text),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    };

    match cli.command {
        Command::Qfim { point, pairs, step } => {
            let pairs = PairCount::new(pairs)?;
            let p = point.point()?;
            let numeric = qfim_pure_numeric(|q| output_state(pairs, q), p, step)?;
            let encoded = apply_mode_unitary(
                &indistinguishability_unitary(p.indistinguishability())?,
                &probe_state(pairs),
            )?;
            let mut out = String::from("source,phi_phi,phi_indist,indist_indist\n");
            push_matrix(&mut out, "numeric", &numeric);
            if pairs.get() == 1 {
                push_matrix(
                    &mut out,
                    "closed_form",
                    &qfim_closed_form(p.indistinguishability())?,
                );
            }
            let _ = writeln!(
                out,
                "# phase_only_qfi = {}",
                format_float(qfi_from_generator(&encoded)?)
            );
            emit(out)
        }
        Command::Probs { point } => {
            let dist = outcome_distribution(point.point()?);
            let mut out = String::from("outcome,probability\n");
            for (outcome, p) in dist.iter() {
                let _ = writeln!(out, "{},{}", outcome.label(), format_float(p));
            }
            emit(out)
        }
        Command::Simulate { point, run } => {
            apply_run_args(&mut config, &run)?;
            let p = point.point()?;
            let result = with_threads(run.threads, || {
                monte_carlo(p, config.samples, config.experiments, config.master_seed)
            })??;
            let qfi = qfim_closed_form(p.indistinguishability())?;
            let record =
                SweepRecord::from_monte_carlo(&result, qfi.indist_indist(), qfi.phase_phase());
            emit(SweepDataset::new(vec![record]).to_csv())
        }
        Command::Mle { counts } => {
            let counts = parse_counts(&counts)?;
            let est = mle(&counts);
            let mut out = String::from("est_indist,est_phi\n");
            let _ = writeln!(
                out,
                "{},{}",
                format_float(est.indistinguishability()),
                format_float(est.phase())
            );
            emit(out)
        }
        Command::Sweep {
            phases,
            indist,
            run,
        } => {
            apply_run_args(&mut config, &run)?;
            if let Some(list) = phases {
                config.phases = parse_list_flag("phases", &list)?;
            }
            if let Some(list) = indist {
                config.indistinguishabilities = parse_list_flag("indistinguishabilities", &list)?;
            }
            if let Some(path) = cli.out {
                config.output = path;
            }
            let dataset = with_threads(run.threads, || {
                run_sweep_with(&config, |done, total, status| {
                    let tag = match status {
                        CellStatus::Computed => "computed",
                        CellStatus::Resumed => "resumed",
                    };
                    eprintln!("[{done:>4}/{total}] {tag}");
                })
            })??;
            eprintln!(
                "wrote {} records to {}",
                dataset.len(),
                config.output.display()
            );
            Ok(())
        }
        Command::FigureData { dataset, figure } => {
            let figure: Figure = figure.parse()?;
            let table = emit_figure_data(&read_dataset(&dataset)?, figure)?;
            emit(table.to_text())
        }
        Command::QcrCheck { dataset } => emit(qcr_check(&read_dataset(&dataset)?)?.to_text()),
    }
}

fn push_matrix(out: &mut String, label: &str, m: &FisherMatrix) {
    let _ = writeln!(
        out,
        "{label},{},{},{}",
        format_float(m.phase_phase().to_f64()),
        format_float(m.phase_indist().to_f64()),
        format_float(m.indist_indist().to_f64())
    );
}

fn apply_run_args(config: &mut SweepConfig, run: &RunArgs) -> Result<()> {
    if let Some(n) = run.samples {
        config.samples = n;
    }
    if let Some(m) = run.experiments {
        config.experiments = m;
    }
    if config.samples < 1 {
        return Err(CliError::invalid("samples", "must be at least 1"));
    }
    if config.experiments < 2 {
        return Err(CliError::invalid("experiments", "must be at least 2"));
    }
    Ok(())
}

fn parse_list_flag(field: &str, list: &str) -> Result<Vec<f64>> {
    biphoton_cli::config::parse_list(list).map_err(|reason| CliError::invalid(field, reason))
}

fn with_threads<T: Send>(threads: Option<u16>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(usize::from(n))
                .build()
                .map_err(|e| CliError::invalid("threads", e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

fn parse_counts(text: &str) -> Result<CountVector> {
    let bad = |reason: String| CliError::invalid("counts", reason);
    let items: Vec<&str> = text.split(',').map(str::trim).collect();
    let mut counts = [0u64; 10];
    if items.iter().all(|s| s.contains('=')) {
        for item in items {
            let (label, n) = item.split_once('=').expect("checked above");
            let outcome = Outcome::ALL
                .into_iter()
                .find(|o| o.label() == label.trim())
                .ok_or_else(|| bad(format!("unknown outcome `{label}`")))?;
            counts[outcome.index()] += n
                .trim()
                .parse::<u64>()
                .map_err(|_| bad(format!("`{n}` is not a count")))?;
        }
    } else {
        if items.len() != 7 && items.len() != 10 {
            return Err(bad(format!(
                "expected 7 or 10 counts, found {}",
                items.len()
            )));
        }
        for (slot, n) in counts.iter_mut().zip(&items) {
            *slot = n
                .parse()
                .map_err(|_| bad(format!("`{n}` is not a count")))?;
        }
    }
    Ok(CountVector::new(counts)?)
}
