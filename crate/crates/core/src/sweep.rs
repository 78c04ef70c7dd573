//! Figure presets, parallel time-sweep execution, and CSV/JSON emission.
//!
//! A sweep evaluates every metric (partial-transpose minimum, degree of
//! entanglement, impurities, local/non-local information) on a cartesian
//! grid of coupling ratios and scaled times, producing one [`MetricsRow`]
//! per `(r, tau)` cell. Cells are independent, so they distribute across a
//! thread pool; rows are assembled in grid order regardless of completion
//! order and are bit-identical for any parallelism degree.

use std::fs;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::atoms::AtomPair;
use crate::config::{EvolutionMode, PropagatorForm, SystemConfig};
use crate::error::{Error, Result};
use crate::evolution::{Evolution, TwoQubitDensity};
use crate::field::coherent_amplitudes;
use crate::measures::{degree_of_entanglement, info_report, initial_reference_states};

/// Initial preparation of the two atoms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Preparation {
    /// Both atoms in `|g>`.
    Ground,
    /// Both atoms in `|e>`.
    Excited,
    /// `cos(theta) |ee> + sin(theta) |gg>`, `theta` in radians.
    Partial { theta: f64 },
    /// Product of two arbitrary pure qubits `(a1 |e> + b1 |g>) x
    /// (a2 |e> + b2 |g>)`; each factor is normalized on resolution.
    Product {
        a1: Complex64,
        b1: Complex64,
        a2: Complex64,
        b2: Complex64,
    },
}

impl Preparation {
    /// Resolves the preparation to a concrete joint state.
    pub fn atom_pair(&self) -> Result<AtomPair> {
        match *self {
            Preparation::Ground => Ok(AtomPair::ground()),
            Preparation::Excited => Ok(AtomPair::excited()),
            Preparation::Partial { theta } => AtomPair::partial_entangled_preparation(theta),
            Preparation::Product { a1, b1, a2, b2 } => {
                AtomPair::product_preparation(a1, b1, a2, b2)
            }
        }
    }
}

/// Everything that determines the numbers in a sweep: preparation, coupling
/// ratios, field size, time grid, evolution mode, propagator form, and
/// truncation budget.
///
/// Output path, format, and parallelism degree deliberately live outside
/// this struct (in the CLI layer): they do not affect any computed value,
/// and the resolved config is embedded verbatim in emitted files, which must
/// be byte-identical across parallelism degrees.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub preparation: Preparation,
    /// Coupling ratios; one output series per entry.
    pub r_values: Vec<f64>,
    /// Mean photon number of the coherent field.
    pub nbar: f64,
    /// Scaled interaction times, strictly increasing.
    pub t_grid: Vec<f64>,
    pub evolution_mode: EvolutionMode,
    pub propagator_form: PropagatorForm,
    /// Neglected photon-number tail mass.
    pub truncation_epsilon: f64,
}

impl SweepConfig {
    /// Checks that every `(r, tau)` cell resolves to a valid system
    /// configuration and the preparation to a valid joint state.
    pub fn validate(&self) -> Result<()> {
        if self.r_values.is_empty() {
            return Err(Error::InvalidInput(
                "at least one coupling ratio is required".into(),
            ));
        }
        for &r in &self.r_values {
            let system = SystemConfig {
                r,
                nbar: self.nbar,
                t_grid: self.t_grid.clone(),
                evolution_mode: self.evolution_mode,
                propagator_form: self.propagator_form,
                truncation_epsilon: self.truncation_epsilon,
            };
            system.validate()?;
        }
        self.preparation.atom_pair()?;
        Ok(())
    }
}

/// All metrics evaluated at one `(tau, r)` grid cell.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricsRow {
    pub tau: f64,
    pub r: f64,
    /// Minimum eigenvalue of the partial transpose; negative iff entangled.
    pub ppt_min: f64,
    pub doe: f64,
    pub xi1: f64,
    pub xi2: f64,
    pub xi12: f64,
    pub i_l1: f64,
    pub i_l2: f64,
    pub i_total: f64,
    pub i_nl: f64,
    pub mode: EvolutionMode,
    pub propagator_form: PropagatorForm,
    /// Worst deviation of the configured analytic propagator from the
    /// spectral oracle over all contributing blocks at this time; zero when
    /// the spectral route drives the evolution.
    pub max_propagator_discrepancy: f64,
}

impl MetricsRow {
    /// All numeric fields finite and `i_nl = 2 - i_total` within 1e-12.
    pub fn validate(&self) -> Result<()> {
        let numeric = [
            ("tau", self.tau),
            ("r", self.r),
            ("ppt_min", self.ppt_min),
            ("doe", self.doe),
            ("xi1", self.xi1),
            ("xi2", self.xi2),
            ("xi12", self.xi12),
            ("i_l1", self.i_l1),
            ("i_l2", self.i_l2),
            ("i_total", self.i_total),
            ("i_nl", self.i_nl),
            ("max_propagator_discrepancy", self.max_propagator_discrepancy),
        ];
        for (name, value) in numeric {
            if !value.is_finite() {
                return Err(Error::Validation(format!(
                    "metrics field {name} is not finite: {value}"
                )));
            }
        }
        if (self.i_nl - (2.0 - self.i_total)).abs() > 1e-12 {
            return Err(Error::Validation(format!(
                "information bookkeeping broken: i_nl = {} but 2 - i_total = {}",
                self.i_nl,
                2.0 - self.i_total
            )));
        }
        Ok(())
    }
}

/// A finished sweep: the resolved configuration plus one row per grid cell.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepOutput {
    pub config: SweepConfig,
    pub rows: Vec<MetricsRow>,
}

/// Names accepted by [`figure_preset`].
pub const PRESET_NAMES: [&str; 17] = [
    "fig1a", "fig1b", "fig2a", "fig2b", "fig3a", "fig3b", "fig3c", "fig4a", "fig4b", "fig4c",
    "fig5", "fig6a", "fig6b", "fig6c", "fig6d", "fig7a", "fig7b",
];

/// `count` evenly spaced points from `start` to `end` inclusive.
pub fn linspace(start: f64, end: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        _ => (0..count)
            .map(|i| start + (end - start) * i as f64 / (count - 1) as f64)
            .collect(),
    }
}

/// Canned sweep configurations reproducing the published figure panels.
///
/// Grid ranges are conventions chosen to contain the described features
/// (the axes of the source figures are unlabeled): 400 points on `[0, 25]`
/// for the main dynamics panels, `[0, 50]` for the long entanglement views,
/// and 200 points on `[0, 1]` for the short-time close-ups. Panels that
/// differ only in which column is plotted (e.g. `fig6a` impurity vs `fig6b`
/// information) share one configuration, since every row carries all
/// metrics. Where caption and body text disagree on parameters, the body
/// text wins: `fig5` covers both of its coupling ratios 0.1 and 0.8 at
/// `nbar = 10`, and `fig6`/`fig7` use `nbar` of 5 and 7 at `r = 0.1`.
pub fn figure_preset(name: &str) -> Result<SweepConfig> {
    let ground = Preparation::Ground;
    let partial = Preparation::Partial {
        theta: std::f64::consts::FRAC_PI_3,
    };
    let both = || vec![0.1, 0.8];
    let weak = || vec![0.1];
    let main = || linspace(0.0, 25.0, 400);
    let long = || linspace(0.0, 50.0, 400);
    let fine = || linspace(0.0, 1.0, 200);

    let (preparation, r_values, nbar, t_grid) = match name {
        "fig1a" => (ground, both(), 5.0, main()),
        "fig1b" => (ground, both(), 10.0, main()),
        "fig2a" => (partial, both(), 5.0, main()),
        "fig2b" => (partial, both(), 10.0, main()),
        "fig3a" => (ground, both(), 5.0, long()),
        "fig3b" => (ground, both(), 10.0, long()),
        "fig3c" => (ground, both(), 5.0, fine()),
        "fig4a" => (partial, both(), 5.0, long()),
        "fig4b" => (partial, both(), 10.0, long()),
        "fig4c" => (partial, both(), 5.0, fine()),
        "fig5" => (ground, both(), 10.0, main()),
        "fig6a" | "fig6b" => (ground, weak(), 5.0, main()),
        "fig6c" | "fig6d" => (ground, weak(), 7.0, main()),
        "fig7a" | "fig7b" => (partial, weak(), 7.0, main()),
        _ => {
            return Err(Error::InvalidInput(format!(
                "unknown preset '{name}'; valid presets: {}",
                PRESET_NAMES.join(", ")
            )))
        }
    };
    Ok(SweepConfig {
        preparation,
        r_values,
        nbar,
        t_grid,
        evolution_mode: EvolutionMode::Paper,
        propagator_form: PropagatorForm::Spectral,
        truncation_epsilon: 1e-12,
    })
}

/// Prefixes a computation error with the grid cell it occurred at.
fn with_cell_context(error: Error, tau: f64, r: f64, nbar: f64) -> Error {
    prefix_error(error, format!("at tau = {tau}, r = {r}, nbar = {nbar}"))
}

/// Prefixes a series-construction error with its coupling ratio.
fn with_series_context(error: Error, r: f64, nbar: f64) -> Error {
    prefix_error(error, format!("preparing the r = {r}, nbar = {nbar} series"))
}

fn prefix_error(error: Error, ctx: String) -> Error {
    match error {
        Error::InvalidInput(m) => Error::InvalidInput(format!("{ctx}: {m}")),
        Error::NumericalDomain(m) => Error::NumericalDomain(format!("{ctx}: {m}")),
        Error::Truncation(m) => Error::Truncation(format!("{ctx}: {m}")),
        Error::Validation(m) => Error::Validation(format!("{ctx}: {m}")),
        Error::Optimization(m) => Error::Optimization(format!("{ctx}: {m}")),
        Error::Io(e) => Error::Io(e),
    }
}

/// Runs the full sweep, one row per `(r, tau)` cell in r-major order.
///
/// `jobs` selects the parallelism degree: 1 runs strictly sequentially,
/// any other value distributes cells over that many threads (0 uses the
/// global default pool). Every cell is a pure function of immutable shared
/// inputs, and rows are collected in grid order, so the output does not
/// depend on `jobs` in any way, including bitwise.
pub fn run_sweep(config: &SweepConfig, jobs: usize) -> Result<Vec<MetricsRow>> {
    config.validate()?;
    let atoms = config.preparation.atom_pair()?;
    let alpha = Complex64::new(config.nbar.sqrt(), 0.0);
    let field = coherent_amplitudes(alpha, config.truncation_epsilon)?;
    let (phi1, phi2) = initial_reference_states(&TwoQubitDensity::from_pure(atoms.joint()));

    let mut evolutions = Vec::with_capacity(config.r_values.len());
    for &r in &config.r_values {
        let evolution = Evolution::new(
            config.evolution_mode,
            config.propagator_form,
            atoms.clone(),
            field.clone(),
            r,
        )
        .map_err(|e| with_series_context(e, r, config.nbar))?;
        evolutions.push(evolution);
    }

    let cells: Vec<(usize, f64)> = (0..config.r_values.len())
        .flat_map(|ri| config.t_grid.iter().map(move |&tau| (ri, tau)))
        .collect();

    let compute = |&(ri, tau): &(usize, f64)| -> Result<MetricsRow> {
        let r = config.r_values[ri];
        let evolution = &evolutions[ri];
        let build = || -> Result<MetricsRow> {
            let state = evolution.state_at(tau)?;
            let rho12 = state.reduce_two_qubit()?;
            rho12.validate()?;
            let ppt = degree_of_entanglement(&rho12);
            let info = info_report(&rho12, &phi1, &phi2)?;
            let row = MetricsRow {
                tau,
                r,
                ppt_min: ppt.min_eigenvalue,
                doe: ppt.doe,
                xi1: info.xi1,
                xi2: info.xi2,
                xi12: info.xi12,
                i_l1: info.i_local_1,
                i_l2: info.i_local_2,
                i_total: info.i_local_total,
                i_nl: info.i_nonlocal,
                mode: config.evolution_mode,
                propagator_form: config.propagator_form,
                max_propagator_discrepancy: evolution.max_discrepancy(tau),
            };
            row.validate()?;
            Ok(row)
        };
        build().map_err(|e| with_cell_context(e, tau, r, config.nbar))
    };

    match jobs {
        1 => cells.iter().map(compute).collect(),
        0 => cells.par_iter().map(compute).collect(),
        n => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidInput(format!("cannot build a {n}-thread pool: {e}")))?
            .install(|| cells.par_iter().map(compute).collect()),
    }
}

/// Exact CSV column order; matches the [`MetricsRow`] field names.
pub const CSV_HEADER: &str = "tau,r,ppt_min,doe,xi1,xi2,xi12,i_l1,i_l2,i_total,i_nl,mode,\
                              propagator_form,max_propagator_discrepancy";

/// Writes the sweep as CSV: one `# config: {json}` metadata line carrying
/// the full resolved configuration, the header, then one line per row with
/// floats at full double precision (17 significant digits).
pub fn emit_csv<W: Write>(out: &mut W, config: &SweepConfig, rows: &[MetricsRow]) -> Result<()> {
    let config_json = serde_json::to_string(config)
        .map_err(|e| Error::Validation(format!("config serialization failed: {e}")))?;
    writeln!(out, "# config: {config_json}")?;
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},\
             {:.16e},{},{},{:.16e}",
            row.tau,
            row.r,
            row.ppt_min,
            row.doe,
            row.xi1,
            row.xi2,
            row.xi12,
            row.i_l1,
            row.i_l2,
            row.i_total,
            row.i_nl,
            row.mode,
            row.propagator_form,
            row.max_propagator_discrepancy,
        )?;
    }
    Ok(())
}

/// Writes the sweep as a pretty-printed JSON object `{config, rows}`.
pub fn emit_json<W: Write>(out: &mut W, config: &SweepConfig, rows: &[MetricsRow]) -> Result<()> {
    let output = SweepOutput {
        config: config.clone(),
        rows: rows.to_vec(),
    };
    serde_json::to_writer_pretty(&mut *out, &output)
        .map_err(|e| Error::Validation(format!("JSON serialization failed: {e}")))?;
    out.write_all(b"\n")?;
    Ok(())
}

/// Attaches the offending path to a file-level I/O error.
fn io_with_path(e: std::io::Error, path: &Path) -> Error {
    Error::Io(std::io::Error::new(
        e.kind(),
        format!("{}: {e}", path.display()),
    ))
}

/// Emits CSV to a file, surfacing I/O failures with the path.
pub fn write_csv(path: &Path, config: &SweepConfig, rows: &[MetricsRow]) -> Result<()> {
    let mut buffer = Vec::new();
    emit_csv(&mut buffer, config, rows)?;
    fs::write(path, buffer).map_err(|e| io_with_path(e, path))
}

/// Emits JSON to a file, surfacing I/O failures with the path.
pub fn write_json(path: &Path, config: &SweepConfig, rows: &[MetricsRow]) -> Result<()> {
    let mut buffer = Vec::new();
    emit_json(&mut buffer, config, rows)?;
    fs::write(path, buffer).map_err(|e| io_with_path(e, path))
}

/// Parses a previously emitted JSON sweep; `parse(emit(t)) = t` bit-exactly.
pub fn read_json(path: &Path) -> Result<SweepOutput> {
    let text = fs::read_to_string(path).map_err(|e| io_with_path(e, path))?;
    serde_json::from_str(&text).map_err(|e| {
        Error::InvalidInput(format!("cannot parse sweep JSON {}: {e}", path.display()))
    })
}

/// Largest propagator discrepancy across a table; callers warn when this
/// exceeds their reporting threshold.
pub fn max_discrepancy_over(rows: &[MetricsRow]) -> f64 {
    rows.iter()
        .map(|row| row.max_propagator_discrepancy)
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_3;

    fn small_config(preparation: Preparation, mode: EvolutionMode) -> SweepConfig {
        SweepConfig {
            preparation,
            r_values: vec![0.5],
            nbar: 5.0,
            t_grid: vec![0.0],
            evolution_mode: mode,
            propagator_form: PropagatorForm::Spectral,
            truncation_epsilon: 1e-12,
        }
    }

    #[test]
    fn every_preset_resolves_and_validates() {
        for name in PRESET_NAMES {
            let config = figure_preset(name).unwrap();
            config.validate().unwrap();
        }
        let fig1a = figure_preset("fig1a").unwrap();
        assert_eq!(fig1a.r_values, vec![0.1, 0.8]);
        assert_eq!(fig1a.nbar, 5.0);
        assert_eq!(fig1a.t_grid.len(), 400);
        assert_eq!(*fig1a.t_grid.last().unwrap(), 25.0);
        assert_eq!(fig1a.preparation, Preparation::Ground);

        let fig3c = figure_preset("fig3c").unwrap();
        assert_eq!(fig3c.t_grid.len(), 200);
        assert_eq!(*fig3c.t_grid.last().unwrap(), 1.0);

        let fig7a = figure_preset("fig7a").unwrap();
        assert_eq!(fig7a.r_values, vec![0.1]);
        assert_eq!(fig7a.nbar, 7.0);
        assert_eq!(
            fig7a.preparation,
            Preparation::Partial { theta: FRAC_PI_3 }
        );
    }

    #[test]
    fn unknown_preset_reports_the_valid_names() {
        let err = figure_preset("fig9z").unwrap_err().to_string();
        assert!(err.contains("fig1a"), "{err}");
        assert!(err.contains("fig7b"), "{err}");
    }

    #[test]
    fn ground_start_carries_no_entanglement_or_impurity() {
        let rows = run_sweep(&small_config(Preparation::Ground, EvolutionMode::Paper), 1).unwrap();
        assert_eq!(rows.len(), 1);
        let row = rows[0];
        assert_abs_diff_eq!(row.doe, 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!(row.xi1, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(row.xi2, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(row.xi12, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(row.i_nl, 0.0, epsilon = 1e-6);
        assert_abs_diff_eq!(row.i_total, 2.0, epsilon = 1e-6);
        assert_eq!(row.max_propagator_discrepancy, 0.0);
    }

    #[test]
    fn partial_start_in_exact_mode_matches_closed_forms() {
        let config = small_config(
            Preparation::Partial { theta: FRAC_PI_3 },
            EvolutionMode::Exact,
        );
        let row = run_sweep(&config, 1).unwrap()[0];
        assert_abs_diff_eq!(row.doe, 3.0_f64.sqrt() / 2.0, epsilon = 1e-10);
        assert_abs_diff_eq!(row.i_l1, 0.25, epsilon = 1e-6);
        assert_abs_diff_eq!(row.i_l2, 0.25, epsilon = 1e-6);
        assert_abs_diff_eq!(row.i_nl, 1.5, epsilon = 1e-6);
        assert_abs_diff_eq!(row.xi12, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn partial_start_in_paper_mode_damps_the_initial_coherence() {
        // The excitation-block bookkeeping pairs |ee, n> with |gg, n+2>, so
        // at tau = 0 the reassembled |ee><gg| coherence carries the overlap
        // sum_k q_k q_{k+2} < 1 of the shifted photon distributions.
        let config = small_config(
            Preparation::Partial { theta: FRAC_PI_3 },
            EvolutionMode::Paper,
        );
        let row = run_sweep(&config, 1).unwrap()[0];
        let field = coherent_amplitudes(Complex64::new(5.0_f64.sqrt(), 0.0), 1e-12).unwrap();
        let damping: f64 = (0..field.n_max() - 1)
            .map(|k| (field.amplitude(k) * field.amplitude(k + 2)).re)
            .sum();
        assert!(damping < 1.0);
        assert_abs_diff_eq!(
            row.doe,
            damping * 3.0_f64.sqrt() / 2.0,
            epsilon = 1e-10
        );
    }

    #[test]
    fn csv_layout_holds() {
        let mut config = small_config(Preparation::Ground, EvolutionMode::Paper);
        config.r_values = vec![0.1, 0.8];
        config.t_grid = vec![0.0, 1.0, 2.0];
        let rows = run_sweep(&config, 1).unwrap();
        assert_eq!(rows.len(), 6);
        // r-major ordering: first series is r = 0.1 across all times.
        assert_eq!(rows[0].r, 0.1);
        assert_eq!(rows[2].r, 0.1);
        assert_eq!(rows[3].r, 0.8);

        let mut buffer = Vec::new();
        emit_csv(&mut buffer, &config, &rows).unwrap();
        let text = String::from_utf8(buffer).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2 + 6);
        assert!(lines[0].starts_with("# config: {"));
        assert_eq!(lines[1], CSV_HEADER);
        for line in &lines[2..] {
            assert_eq!(line.split(',').count(), 14);
        }
        let first: f64 = lines[2].split(',').next().unwrap().parse().unwrap();
        assert_eq!(first, 0.0);
        assert!(lines[2].contains(",paper,spectral,"));
    }

    #[test]
    fn json_round_trips_bit_exactly() {
        let mut config = small_config(Preparation::Ground, EvolutionMode::Paper);
        config.t_grid = vec![0.0, 0.7];
        let rows = run_sweep(&config, 1).unwrap();

        let dir = std::env::temp_dir().join("sweep-json-roundtrip-test");
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("out.json");
        write_json(&path, &config, &rows).unwrap();
        let parsed = read_json(&path).unwrap();
        assert_eq!(parsed.config, config);
        assert_eq!(parsed.rows, rows);
        fs::remove_file(&path).ok();
    }

    #[test]
    fn parallelism_degree_does_not_change_a_single_byte() {
        let mut config = small_config(Preparation::Partial { theta: 0.4 }, EvolutionMode::Paper);
        config.r_values = vec![0.1, 0.8];
        config.t_grid = linspace(0.0, 5.0, 24);
        let sequential = run_sweep(&config, 1).unwrap();
        let parallel = run_sweep(&config, 4).unwrap();
        assert_eq!(sequential, parallel);

        let mut bytes_seq = Vec::new();
        emit_csv(&mut bytes_seq, &config, &sequential).unwrap();
        let mut bytes_par = Vec::new();
        emit_csv(&mut bytes_par, &config, &parallel).unwrap();
        assert_eq!(bytes_seq, bytes_par);
    }

    #[test]
    fn empty_table_emits_header_and_metadata_only() {
        let config = small_config(Preparation::Ground, EvolutionMode::Paper);
        let mut buffer = Vec::new();
        emit_csv(&mut buffer, &config, &[]).unwrap();
        let text = String::from_utf8(buffer).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].starts_with("# config:"));
        assert_eq!(lines[1], CSV_HEADER);
    }

    #[test]
    fn verbatim_domain_failure_carries_the_cell_context() {
        let mut config = small_config(Preparation::Ground, EvolutionMode::Paper);
        config.r_values = vec![0.1];
        config.t_grid = vec![1.0];
        config.propagator_form = PropagatorForm::AnalyticVerbatim;
        let err = run_sweep(&config, 1).unwrap_err();
        let text = err.to_string();
        assert!(text.contains("r = 0.1"), "{text}");
        assert!(matches!(err, Error::NumericalDomain(_)), "{text}");
    }

    #[test]
    fn preparation_serde_names_are_stable() {
        let partial = Preparation::Partial { theta: 1.0 };
        let json = serde_json::to_string(&partial).unwrap();
        assert_eq!(json, r#"{"kind":"partial","theta":1.0}"#);
        let ground: Preparation = serde_json::from_str(r#"{"kind":"ground"}"#).unwrap();
        assert_eq!(ground, Preparation::Ground);
    }
}
