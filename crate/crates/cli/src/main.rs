//! `simulate` — run a metric sweep from a figure preset or a JSON config
//! file and emit CSV or JSON.
//!
//! Exit codes: 0 on success, 2 on usage errors (including invalid inputs),
//! 3 on numerical or validation failures, 1 on I/O failures.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, ValueEnum};

use cavity_duet::{
    emit_csv, emit_json, figure_preset, max_discrepancy_over, run_sweep, write_csv, write_json,
    Error, EvolutionMode, PropagatorForm, SweepConfig, PRESET_NAMES,
};

/// Analytic-vs-spectral deviations above this level are surfaced on stderr.
const DISCREPANCY_WARN: f64 = 1e-8;

#[derive(Parser)]
#[command(
    name = "simulate",
    version,
    about = "Sweep entanglement and information metrics for two non-identical \
             atoms coupled to one cavity mode",
    after_help = "Presets: fig1a fig1b fig2a fig2b fig3a fig3b fig3c fig4a fig4b \
                  fig4c fig5 fig6a fig6b fig6c fig6d fig7a fig7b"
)]
#[command(group(ArgGroup::new("source").required(true).args(["preset", "config"])))]
struct Cli {
    /// Figure preset name (see the list below)
    #[arg(long)]
    preset: Option<String>,

    /// JSON config file mirroring the sweep configuration fields; may also
    /// carry "output", "format", and "jobs" keys
    #[arg(long)]
    config: Option<PathBuf>,

    /// Output file; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,

    /// Output format
    #[arg(long, value_enum)]
    format: Option<CliFormat>,

    /// Override the evolution mode
    #[arg(long, value_enum)]
    mode: Option<CliMode>,

    /// Override the propagator form
    #[arg(long, value_enum)]
    propagator: Option<CliPropagator>,

    /// Worker threads; 0 uses the default pool
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliMode {
    Paper,
    Exact,
}

impl From<CliMode> for EvolutionMode {
    fn from(mode: CliMode) -> Self {
        match mode {
            CliMode::Paper => EvolutionMode::Paper,
            CliMode::Exact => EvolutionMode::Exact,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CliPropagator {
    Spectral,
    AnalyticCorrected,
    AnalyticVerbatim,
}

impl From<CliPropagator> for PropagatorForm {
    fn from(form: CliPropagator) -> Self {
        match form {
            CliPropagator::Spectral => PropagatorForm::Spectral,
            CliPropagator::AnalyticCorrected => PropagatorForm::AnalyticCorrected,
            CliPropagator::AnalyticVerbatim => PropagatorForm::AnalyticVerbatim,
        }
    }
}

/// Output controls a config file may carry next to the sweep fields.
#[derive(Default)]
struct FileExtras {
    output: Option<PathBuf>,
    format: Option<CliFormat>,
    jobs: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(match error {
                Error::InvalidInput(_) => 2,
                Error::NumericalDomain(_)
                | Error::Truncation(_)
                | Error::Validation(_)
                | Error::Optimization(_) => 3,
                Error::Io(_) => 1,
            })
        }
    }
}

fn run(cli: Cli) -> cavity_duet::Result<()> {
    let (mut config, extras) = match (&cli.preset, &cli.config) {
        (Some(name), None) => (figure_preset(name)?, FileExtras::default()),
        (None, Some(path)) => load_config_file(path)?,
        _ => unreachable!("clap enforces exactly one of --preset/--config"),
    };
    if let Some(mode) = cli.mode {
        config.evolution_mode = mode.into();
    }
    if let Some(form) = cli.propagator {
        config.propagator_form = form.into();
    }
    let format = cli.format.or(extras.format).unwrap_or(CliFormat::Csv);
    let out = cli.out.or(extras.output);
    let jobs = cli.jobs.or(extras.jobs).unwrap_or(0);

    let rows = run_sweep(&config, jobs)?;

    let worst = max_discrepancy_over(&rows);
    if worst > DISCREPANCY_WARN {
        eprintln!(
            "warning: the analytic propagator deviates from the spectral oracle \
             by up to {worst:.3e}"
        );
    }

    match out {
        Some(path) => match format {
            CliFormat::Csv => write_csv(&path, &config, &rows)?,
            CliFormat::Json => write_json(&path, &config, &rows)?,
        },
        None => {
            let stdout = io::stdout();
            let mut handle = stdout.lock();
            match format {
                CliFormat::Csv => emit_csv(&mut handle, &config, &rows)?,
                CliFormat::Json => emit_json(&mut handle, &config, &rows)?,
            }
            handle.flush()?;
        }
    }
    Ok(())
}

/// Reads a JSON config file: the sweep fields at the top level, plus
/// optional "output" (path), "format" ("csv"/"json"), and "jobs" keys.
fn load_config_file(path: &Path) -> cavity_duet::Result<(SweepConfig, FileExtras)> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
    let mut value: serde_json::Value = serde_json::from_str(&text).map_err(|e| {
        Error::InvalidInput(format!("cannot parse config {}: {e}", path.display()))
    })?;
    let object = value.as_object_mut().ok_or_else(|| {
        Error::InvalidInput(format!("config {} must be a JSON object", path.display()))
    })?;

    let mut extras = FileExtras::default();
    if let Some(v) = object.remove("output") {
        let s = v.as_str().ok_or_else(|| {
            Error::InvalidInput(format!("config key \"output\" must be a string, got {v}"))
        })?;
        extras.output = Some(PathBuf::from(s));
    }
    if let Some(v) = object.remove("format") {
        extras.format = Some(match v.as_str() {
            Some("csv") => CliFormat::Csv,
            Some("json") => CliFormat::Json,
            _ => {
                return Err(Error::InvalidInput(format!(
                    "config key \"format\" must be \"csv\" or \"json\", got {v}"
                )))
            }
        });
    }
    if let Some(v) = object.remove("jobs") {
        let jobs = v.as_u64().ok_or_else(|| {
            Error::InvalidInput(format!(
                "config key \"jobs\" must be a non-negative integer, got {v}"
            ))
        })?;
        extras.jobs = Some(jobs as usize);
    }

    let config: SweepConfig = serde_json::from_value(value).map_err(|e| {
        Error::InvalidInput(format!(
            "invalid config {} (valid presets for --preset: {}): {e}",
            path.display(),
            PRESET_NAMES.join(", ")
        ))
    })?;
    Ok((config, extras))
}
