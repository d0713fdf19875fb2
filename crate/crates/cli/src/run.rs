//! The three pipelines behind the CLI: single-model analysis, parameter
//! sweeps, and complete-positivity traces.
//!
//! Horizon policy: with `t_end = auto`, two-level models propagate with a
//! doubling horizon until both growth witnesses have decayed in the trailing
//! window (capped, with a warning, for models that revive forever); spin-boson
//! runs instead jump straight to a horizon covering the coefficient plateau
//! plus several plateau relaxation times, since their witness envelope decays
//! only on the slow relaxation scale. An explicit `t_end` is honored verbatim
//! and disables the trailing-growth safeguard (with a warning), so short
//! windows remain analyzable.

use std::path::Path;

use nonmarkov_core::canonical::{decoherence_matrix_2level, spectrum};
use nonmarkov_core::measures::{
    check_analytic_conditions, envelope_check, gamma_max_trace, gdiv_bound_value,
    gdiv_lower_bound_2level, gdiv_norm_form, gdiv_witness_2level, n_div, n_div_modified,
    n_dst_analytic, n_dst_optimized, n_dst_upper_bound_unchecked, sigma_witness_on_grid,
    MeasureValue, SearchSettings, WitnessKind, WitnessTrace,
};
use nonmarkov_core::models::{MasterEquation2L, SpinBosonCoefficients};
use nonmarkov_core::numerics::ode::OdeOptions;
use nonmarkov_core::propagation::{choi_and_cp_check, matrix_norm, propagate, MapTrajectory};

use crate::config::{Horizon, ModelConfig, RunConfig, SweepConfig};
use crate::csv::{format_bool, format_value, CsvReport};
use crate::model::{build, BuiltModel};
use crate::CliError;

/// Trailing-window decay level both growth witnesses must reach before an
/// automatic horizon counts as settled.
const SETTLE_THRESHOLD: f64 = 1e-10;
/// First horizon tried by the automatic doubling rule.
const AUTO_T_FIRST: f64 = 25.0;
/// Hard cap of the automatic doubling rule.
const AUTO_T_CAP: f64 = 400.0;
/// Automatic spin-boson horizons cover this many plateau relaxation times.
const RELAX_MULTIPLE: f64 = 2.5;
/// Maximum number of sampled rows in a CP trace.
const CP_SAMPLES: usize = 2000;
/// Maximum number of rows written to witness.csv (the measure grid itself can
/// be much denser; rows are strided deterministically).
const WITNESS_ROWS: usize = 20_000;

const MEASURE_COLUMNS: [&str; 11] = [
    "n_dst",
    "n_dst_ub",
    "n_dst_analytic",
    "n_div",
    "n_div_lb",
    "n_div_mod",
    "n_div_mod_lb",
    "cond_i",
    "cond_ii",
    "cond_iii",
    "cp_min_eig",
];

fn ode_options(ode_tol: f64, t_end: f64) -> OdeOptions {
    OdeOptions {
        rtol: ode_tol,
        // Map components are O(1); an absolute floor a few orders below the
        // relative one keeps decayed components from stalling the controller.
        atol: (ode_tol * 1e-4).max(1e-14),
        max_steps: 50_000_000,
        // Long horizons thin the stored node table to bound memory.
        dense_min_dt: if t_end <= 500.0 { 0.0 } else { t_end / 200_000.0 },
    }
}

/// Uniform witness/measure grid over [0, t_end]: dense enough that
/// fourth-order quadrature error sits well below the reported tolerances,
/// capped for very long horizons.
fn measure_grid(t_end: f64) -> Vec<f64> {
    let cells = ((t_end * 400.0).ceil() as usize).clamp(4000, 200_000);
    (0..=cells)
        .map(|k| t_end * k as f64 / cells as f64)
        .collect()
}

fn gdiv_at(me: &MasterEquation2L, t: f64) -> f64 {
    gdiv_norm_form(&spectrum(&decoherence_matrix_2level(
        &me.drift(t),
        &me.damping(t),
    )))
}

/// True when g_div ‖N‖ has decayed below the settle threshold throughout the
/// trailing 5% of the stored nodes (at least three).
fn trailing_product_settled(me: &MasterEquation2L, traj: &MapTrajectory) -> bool {
    let grid = traj.grid();
    let t_end = *grid.last().unwrap();
    let window_start = t_end - 0.05 * (t_end - grid[0]);
    let mut checked = 0usize;
    for k in (0..grid.len()).rev() {
        let (t, _, n) = traj.node(k);
        if t < window_start && checked >= 3 {
            break;
        }
        if gdiv_at(me, t) * matrix_norm(&n) > SETTLE_THRESHOLD {
            return false;
        }
        checked += 1;
    }
    true
}

/// A propagated two-level run with horizon bookkeeping.
struct PreparedRun {
    traj: MapTrajectory,
    t_end: f64,
    /// The trailing-growth safeguard passed (settled automatic horizons).
    settled: bool,
    horizon_note: String,
}

fn prepare_two_level(
    me: &MasterEquation2L,
    coeffs: Option<&SpinBosonCoefficients>,
    omega_a: f64,
    cfg: &RunConfig,
) -> Result<PreparedRun, CliError> {
    match cfg.t_end {
        Horizon::Fixed(t_end) => {
            eprintln!(
                "note: explicit run.t_end = {t_end}; measures truncate at this horizon and the \
                 trailing-growth safeguard is disabled"
            );
            let traj = propagate(me, t_end, &ode_options(cfg.ode_tol, t_end))?;
            Ok(PreparedRun {
                traj,
                t_end,
                settled: false,
                horizon_note: format!("fixed ({t_end})"),
            })
        }
        Horizon::Auto => {
            if let Some(c) = coeffs {
                let relax = if c.g_inf.0 > 0.0 {
                    RELAX_MULTIPLE / c.g_inf.0
                } else {
                    0.0
                };
                let t_end = c.grid_end().max(relax) / omega_a;
                let traj = propagate(me, t_end, &ode_options(cfg.ode_tol, t_end))?;
                Ok(PreparedRun {
                    traj,
                    t_end,
                    settled: false,
                    horizon_note: format!("auto (relaxation-scaled, {t_end})"),
                })
            } else {
                let mut t_end = AUTO_T_FIRST;
                loop {
                    let traj = propagate(me, t_end, &ode_options(cfg.ode_tol, t_end))?;
                    let settled = envelope_check(me, &traj, SETTLE_THRESHOLD).is_ok()
                        && trailing_product_settled(me, &traj);
                    if settled {
                        return Ok(PreparedRun {
                            traj,
                            t_end,
                            settled: true,
                            horizon_note: format!("auto (settled, {t_end})"),
                        });
                    }
                    if t_end >= AUTO_T_CAP {
                        eprintln!(
                            "warning: witnesses had not decayed by t = {t_end} (automatic horizon \
                             cap); measures truncate there"
                        );
                        return Ok(PreparedRun {
                            traj,
                            t_end,
                            settled: false,
                            horizon_note: format!("auto (capped, {t_end})"),
                        });
                    }
                    t_end = (t_end * 2.0).min(AUTO_T_CAP);
                }
            }
        }
    }
}

/// Sampled Choi spectral floor over at most [`CP_SAMPLES`] stored nodes:
/// the sampled rows, the smallest eigenvalue seen, and whether any sample
/// violated CP beyond tolerance.
fn cp_scan(
    traj: &MapTrajectory,
    cp_tol: f64,
) -> Result<(Vec<(f64, f64, bool)>, f64, bool), CliError> {
    let grid = traj.grid();
    let stride = grid.len().div_ceil(CP_SAMPLES).max(1);
    let mut indices: Vec<usize> = (0..grid.len()).step_by(stride).collect();
    if *indices.last().unwrap() != grid.len() - 1 {
        indices.push(grid.len() - 1);
    }
    let mut rows = Vec::with_capacity(indices.len());
    let mut min_eig = f64::INFINITY;
    let mut violation = false;
    for k in indices {
        let t = grid[k];
        let (_, eig, ok) = choi_and_cp_check(traj, t, cp_tol)?;
        min_eig = min_eig.min(eig);
        violation |= !ok;
        rows.push((t, eig, ok));
    }
    Ok((rows, min_eig, violation))
}

/// Everything a two-level analysis produces.
struct TwoLevelAnalysis {
    prepared: PreparedRun,
    grid: Vec<f64>,
    sigma_trace: WitnessTrace,
    gamma_trace: WitnessTrace,
    norm_n: Vec<f64>,
    gdiv_trace: WitnessTrace,
    gdiv_lb_trace: WitnessTrace,
    n_dst: f64,
    n_dst_ub: f64,
    analytic: Option<f64>,
    n_div: MeasureValue,
    n_div_lb: MeasureValue,
    n_div_mod: f64,
    n_div_mod_lb: f64,
    cond: (bool, bool, bool),
    vacuous: bool,
    cp_min_eig: f64,
}

fn analyze_two_level(
    me: &MasterEquation2L,
    coeffs: Option<&SpinBosonCoefficients>,
    omega_a: f64,
    cfg: &RunConfig,
) -> Result<TwoLevelAnalysis, CliError> {
    let prepared = prepare_two_level(me, coeffs, omega_a, cfg)?;
    let traj = &prepared.traj;
    let grid = measure_grid(prepared.t_end);

    let settings = SearchSettings {
        skip_envelope_check: !prepared.settled,
        ..SearchSettings::default()
    };
    let (n_dst, pair) = n_dst_optimized(me, traj, &settings)?;
    let n_dst_ub = n_dst_upper_bound_unchecked(me, traj);

    let conds = check_analytic_conditions(me, &grid);
    let analytic = if conds.all_hold() {
        n_dst_analytic(&conds, &grid).ok().map(|a| a.value)
    } else {
        None
    };

    let sigma_trace = sigma_witness_on_grid(me, traj, pair, &grid)?;
    let gamma_trace = gamma_max_trace(me, &grid);
    let norm_n: Vec<f64> = grid.iter().map(|&t| matrix_norm(&traj.eval(t).1)).collect();
    let gdiv_trace = gdiv_witness_2level(me, &grid);
    let gdiv_lb_trace = gdiv_lower_bound_2level(me, &grid);

    let n_div_value = n_div(&gdiv_trace);
    let n_div_lb_value = n_div(&gdiv_lb_trace);
    let n_div_mod = n_div_modified(&gdiv_trace, traj)?;
    let n_div_mod_lb = n_div_modified(&gdiv_lb_trace, traj)?;

    let (_, cp_min_eig, _) = cp_scan(traj, cfg.cp_tol)?;

    Ok(TwoLevelAnalysis {
        prepared,
        grid,
        sigma_trace,
        gamma_trace,
        norm_n,
        gdiv_trace,
        gdiv_lb_trace,
        n_dst,
        n_dst_ub,
        analytic,
        n_div: n_div_value,
        n_div_lb: n_div_lb_value,
        n_div_mod,
        n_div_mod_lb,
        cond: (conds.cond_i, conds.cond_ii, conds.cond_iii),
        vacuous: conds.vacuous,
        cp_min_eig,
    })
}

impl TwoLevelAnalysis {
    fn measure_cells(&self) -> Vec<String> {
        let measure_value = |m: &MeasureValue| match m {
            MeasureValue::Finite(v) => format_value(*v),
            MeasureValue::Divergent { .. } => "inf".to_string(),
        };
        vec![
            format_value(self.n_dst),
            format_value(self.n_dst_ub),
            self.analytic.map_or("nan".to_string(), format_value),
            measure_value(&self.n_div),
            measure_value(&self.n_div_lb),
            format_value(self.n_div_mod),
            format_value(self.n_div_mod_lb),
            format_bool(self.cond.0),
            format_bool(self.cond.1),
            format_bool(self.cond.2),
            format_value(self.cp_min_eig),
        ]
    }

    fn metadata(&self, cfg: &RunConfig) -> Vec<String> {
        let mut lines = cfg.resolved.clone();
        lines.push(format!("conditions.vacuous: {}", self.vacuous));
        lines.push(format!(
            "resolved.envelope_checked: {}",
            self.prepared.settled
        ));
        lines.push(format!("resolved.horizon: {}", self.prepared.horizon_note));
        lines.push(format!("resolved.t_end: {}", self.prepared.t_end));
        lines.push(version_line());
        lines
    }
}

fn version_line() -> String {
    format!("version: nonmarkov {}", env!("CARGO_PKG_VERSION"))
}

fn nan_cells(n: usize) -> Vec<String> {
    vec!["nan".to_string(); n]
}

/// Witness traces of an n-level sampled generator (the columns that need a
/// propagated map are reported as nan).
struct NLevelAnalysis {
    times: Vec<f64>,
    gdiv_trace: WitnessTrace,
    gdiv_lb_trace: WitnessTrace,
    n_div: MeasureValue,
    n_div_lb: MeasureValue,
}

fn analyze_nlevel(
    times: &[f64],
    matrices: &[nonmarkov_core::DecoherenceMatrix],
) -> NLevelAnalysis {
    let gdiv_values: Vec<f64> = matrices.iter().map(|d| gdiv_norm_form(&spectrum(d))).collect();
    let lb_values: Vec<f64> = matrices.iter().map(gdiv_bound_value).collect();
    let gdiv_trace = WitnessTrace::new(times.to_vec(), gdiv_values, WitnessKind::GDiv);
    let gdiv_lb_trace = WitnessTrace::new(times.to_vec(), lb_values, WitnessKind::GDivLb);
    let n_div_value = n_div(&gdiv_trace);
    let n_div_lb_value = n_div(&gdiv_lb_trace);
    NLevelAnalysis {
        times: times.to_vec(),
        gdiv_trace,
        gdiv_lb_trace,
        n_div: n_div_value,
        n_div_lb: n_div_lb_value,
    }
}

impl NLevelAnalysis {
    fn measure_cells(&self) -> Vec<String> {
        let measure_value = |m: &MeasureValue| match m {
            MeasureValue::Finite(v) => format_value(*v),
            MeasureValue::Divergent { .. } => "inf".to_string(),
        };
        let mut cells = nan_cells(MEASURE_COLUMNS.len());
        cells[3] = measure_value(&self.n_div);
        cells[4] = measure_value(&self.n_div_lb);
        cells
    }
}

fn warn_if_strong_coupling(model: &ModelConfig) {
    if let ModelConfig::SpinBoson { alpha, .. } = model {
        if *alpha > 0.1 {
            eprintln!(
                "warning: coupling alpha = {alpha} is outside the weak-coupling regime the \
                 time-local model assumes; results may not be physical"
            );
        }
    }
}

/// Deterministic row stride keeping witness files at most [`WITNESS_ROWS`]
/// rows (the last grid point is always included).
fn witness_indices(len: usize) -> Vec<usize> {
    let stride = len.div_ceil(WITNESS_ROWS).max(1);
    let mut indices: Vec<usize> = (0..len).step_by(stride).collect();
    if *indices.last().unwrap() != len - 1 {
        indices.push(len - 1);
    }
    indices
}

const WITNESS_COLUMNS: [&str; 6] = ["t", "sigma_opt", "gamma_max", "norm_N", "g_div", "g_div_lb"];

pub fn run_analyze(cfg: &RunConfig, out_dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(out_dir)?;
    warn_if_strong_coupling(&cfg.model);
    let built = build(&cfg.model, cfg.quad_tol)?;
    match built {
        BuiltModel::TwoLevel {
            me,
            coeffs,
            omega_a,
        } => {
            let analysis = analyze_two_level(&me, coeffs.as_deref(), omega_a, cfg)?;
            let metadata = analysis.metadata(cfg);

            if cfg.outputs.witnesses {
                let mut report = CsvReport::new(&WITNESS_COLUMNS, metadata.clone());
                for k in witness_indices(analysis.grid.len()) {
                    report.push_row(vec![
                        format_value(analysis.grid[k]),
                        format_value(analysis.sigma_trace.values[k]),
                        format_value(analysis.gamma_trace.values[k]),
                        format_value(analysis.norm_n[k]),
                        format_value(analysis.gdiv_trace.values[k]),
                        format_value(analysis.gdiv_lb_trace.values[k]),
                    ]);
                }
                report.write_to(&out_dir.join("witness.csv"))?;
            }

            if cfg.outputs.measures {
                let mut report = CsvReport::new(&MEASURE_COLUMNS, metadata.clone());
                report.push_row(analysis.measure_cells());
                report.write_to(&out_dir.join("measures.csv"))?;
            }

            if cfg.outputs.cp_trace {
                let (rows, _, _) = cp_scan(&analysis.prepared.traj, cfg.cp_tol)?;
                let mut report = CsvReport::new(&["t", "choi_min_eig", "is_cp"], metadata);
                for (t, eig, ok) in rows {
                    report.push_row(vec![format_value(t), format_value(eig), format_bool(ok)]);
                }
                report.write_to(&out_dir.join("cp_trace.csv"))?;
            }
            Ok(())
        }
        BuiltModel::NLevel { times, matrices } => {
            if cfg.outputs.cp_trace {
                return Err(CliError::config(
                    "cp_trace needs a propagated map; custom_nlevel supplies generator samples only",
                ));
            }
            let analysis = analyze_nlevel(&times, &matrices);
            let mut metadata = cfg.resolved.clone();
            metadata.push(version_line());

            if cfg.outputs.witnesses {
                let mut report = CsvReport::new(&WITNESS_COLUMNS, metadata.clone());
                for k in 0..analysis.times.len() {
                    report.push_row(vec![
                        format_value(analysis.times[k]),
                        "nan".to_string(),
                        "nan".to_string(),
                        "nan".to_string(),
                        format_value(analysis.gdiv_trace.values[k]),
                        format_value(analysis.gdiv_lb_trace.values[k]),
                    ]);
                }
                report.write_to(&out_dir.join("witness.csv"))?;
            }

            if cfg.outputs.measures {
                let mut report = CsvReport::new(&MEASURE_COLUMNS, metadata);
                report.push_row(analysis.measure_cells());
                report.write_to(&out_dir.join("measures.csv"))?;
            }
            Ok(())
        }
    }
}

fn sweep_point_cells(cfg: &RunConfig, sweep: &SweepConfig, value: f64) -> Result<Vec<String>, CliError> {
    let model_cfg = cfg.model.with_parameter(&sweep.parameter, value)?;
    warn_if_strong_coupling(&model_cfg);
    let built = build(&model_cfg, cfg.quad_tol)?;
    let BuiltModel::TwoLevel {
        me,
        coeffs,
        omega_a,
    } = built
    else {
        return Err(CliError::config("sweeps need a two-level model"));
    };
    let analysis = analyze_two_level(&me, coeffs.as_deref(), omega_a, cfg)?;
    let mut cells = Vec::with_capacity(1 + MEASURE_COLUMNS.len());
    cells.push(format_value(value));
    cells.extend(analysis.measure_cells());
    Ok(cells)
}

pub fn run_sweep(cfg: &RunConfig, out_dir: &Path, jobs: usize) -> Result<(), CliError> {
    std::fs::create_dir_all(out_dir)?;
    let sweep = cfg
        .sweep
        .as_ref()
        .ok_or_else(|| CliError::config("sweep needs a [sweep] section in the config"))?;
    let points = sweep.points();

    let mut header: Vec<&str> = vec![sweep.parameter.as_str()];
    header.extend(MEASURE_COLUMNS);

    let mut metadata = cfg.resolved.clone();
    metadata.push("sweep.horizon: resolved independently at every point".to_string());
    metadata.push(version_line());

    let evaluate = |&value: &f64| -> Vec<String> {
        match sweep_point_cells(cfg, sweep, value) {
            Ok(cells) => cells,
            Err(e) => {
                eprintln!(
                    "warning: sweep point {} = {value} failed: {e}",
                    sweep.parameter
                );
                let mut cells = vec![format_value(value)];
                cells.extend(nan_cells(MEASURE_COLUMNS.len()));
                cells
            }
        }
    };

    let rows: Vec<Vec<String>> = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| CliError::numerical(format!("worker pool: {e}")))?;
        pool.install(|| {
            use rayon::prelude::*;
            points.par_iter().map(evaluate).collect()
        })
    } else {
        points.iter().map(evaluate).collect()
    };

    let mut report = CsvReport::new(&header, metadata);
    for row in rows {
        report.push_row(row);
    }
    report.write_to(&out_dir.join("sweep.csv"))?;
    Ok(())
}

/// Returns `true` when a CP violation beyond tolerance was found (the caller
/// maps that to the dedicated exit code).
pub fn run_check_cp(cfg: &RunConfig, out_dir: &Path) -> Result<bool, CliError> {
    std::fs::create_dir_all(out_dir)?;
    warn_if_strong_coupling(&cfg.model);
    let built = build(&cfg.model, cfg.quad_tol)?;
    let BuiltModel::TwoLevel {
        me,
        coeffs,
        omega_a,
    } = built
    else {
        return Err(CliError::config(
            "check-cp needs a propagated map; custom_nlevel supplies generator samples only",
        ));
    };
    let prepared = prepare_two_level(&me, coeffs.as_deref(), omega_a, cfg)?;
    let (rows, min_eig, violation) = cp_scan(&prepared.traj, cfg.cp_tol)?;

    let mut metadata = cfg.resolved.clone();
    metadata.push(format!("cp.min_eigenvalue: {min_eig}"));
    metadata.push(format!("resolved.horizon: {}", prepared.horizon_note));
    metadata.push(format!("resolved.t_end: {}", prepared.t_end));
    metadata.push(version_line());

    let mut report = CsvReport::new(&["t", "choi_min_eig", "is_cp"], metadata);
    for (t, eig, ok) in rows {
        report.push_row(vec![format_value(t), format_value(eig), format_bool(ok)]);
    }
    report.write_to(&out_dir.join("cp_trace.csv"))?;
    Ok(violation)
}
