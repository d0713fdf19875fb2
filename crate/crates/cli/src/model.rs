//! Turn a validated model configuration into something the pipelines can run:
//! a Bloch-form master equation for two-level families, or a sampled
//! decoherence-matrix table for n-level input.

use std::path::Path;
use std::sync::Arc;

use nalgebra::{Complex, DMatrix, Matrix3, Vector3};
use nonmarkov_core::canonical::DecoherenceMatrix;
use nonmarkov_core::models::{
    amplitude_damping, phase_damping, spin_boson_coefficients, spin_boson_model,
    spin_boson_model_unital, MasterEquation2L, RateFunction, SpinBosonCoefficients,
    SpinBosonParams,
};

use crate::config::ModelConfig;
use crate::waveform::{self, Waveform};
use crate::CliError;

/// A model ready to analyze.
pub enum BuiltModel {
    TwoLevel {
        me: MasterEquation2L,
        /// Spin-boson runs keep the coefficient table for horizon selection
        /// and the plateau-based bound approximation.
        coeffs: Option<Arc<SpinBosonCoefficients>>,
        /// System frequency scaling (1 for every other family).
        omega_a: f64,
    },
    NLevel {
        times: Vec<f64>,
        matrices: Vec<DecoherenceMatrix>,
    },
}

impl BuiltModel {
    pub fn is_two_level(&self) -> bool {
        matches!(self, BuiltModel::TwoLevel { .. })
    }
}

fn rate_from_waveform(expr: &str) -> Result<RateFunction, CliError> {
    let w = waveform::parse(expr).map_err(|e| CliError::config(e.to_string()))?;
    Ok(RateFunction::from_fn(move |t| w.eval(t)))
}

/// Piecewise-linear interpolation of a sampled (t, row) table, clamped to the
/// first/last row outside the sampled range.
struct InterpolatedTable {
    times: Vec<f64>,
    rows: Vec<Vec<f64>>,
}

impl InterpolatedTable {
    fn eval(&self, t: f64, out: &mut [f64]) {
        let n = self.times.len();
        if t <= self.times[0] {
            out.copy_from_slice(&self.rows[0]);
            return;
        }
        if t >= self.times[n - 1] {
            out.copy_from_slice(&self.rows[n - 1]);
            return;
        }
        let k = match self
            .times
            .binary_search_by(|probe| probe.partial_cmp(&t).unwrap())
        {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        let (t0, t1) = (self.times[k], self.times[k + 1]);
        let s = (t - t0) / (t1 - t0);
        for (j, slot) in out.iter_mut().enumerate() {
            *slot = (1.0 - s) * self.rows[k][j] + s * self.rows[k + 1][j];
        }
    }
}

/// Read a whitespace-separated numeric table; `#` starts a comment.
fn read_numeric_table(path: &Path, columns: usize) -> Result<(Vec<f64>, Vec<Vec<f64>>), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::config(format!("cannot read table {}: {e}", path.display())))?;
    let mut times = Vec::new();
    let mut rows = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        if fields.len() != columns {
            return Err(CliError::config(format!(
                "{} line {}: expected {columns} columns, found {}",
                path.display(),
                lineno + 1,
                fields.len()
            )));
        }
        let mut values = Vec::with_capacity(columns);
        for f in &fields {
            let v: f64 = f.parse().map_err(|_| {
                CliError::config(format!(
                    "{} line {}: not a number: `{f}`",
                    path.display(),
                    lineno + 1
                ))
            })?;
            if !v.is_finite() {
                return Err(CliError::config(format!(
                    "{} line {}: non-finite entry",
                    path.display(),
                    lineno + 1
                )));
            }
            values.push(v);
        }
        times.push(values[0]);
        rows.push(values[1..].to_vec());
    }
    if times.len() < 2 {
        return Err(CliError::config(format!(
            "{}: need at least two sample rows",
            path.display()
        )));
    }
    for k in 1..times.len() {
        if times[k] <= times[k - 1] {
            return Err(CliError::config(format!(
                "{}: sample times must be strictly increasing (row {})",
                path.display(),
                k + 1
            )));
        }
    }
    Ok((times, rows))
}

fn custom_2level_from_waveforms(
    damping: &[String; 9],
    drift: &[String; 3],
) -> Result<MasterEquation2L, CliError> {
    let d: Vec<Waveform> = damping
        .iter()
        .map(|e| waveform::parse(e).map_err(|err| CliError::config(err.to_string())))
        .collect::<Result<_, _>>()?;
    let v: Vec<Waveform> = drift
        .iter()
        .map(|e| waveform::parse(e).map_err(|err| CliError::config(err.to_string())))
        .collect::<Result<_, _>>()?;
    let d: [Waveform; 9] = d.try_into().unwrap();
    let v: [Waveform; 3] = v.try_into().unwrap();
    Ok(MasterEquation2L::new(
        "custom_2level",
        move |t| Vector3::new(v[0].eval(t), v[1].eval(t), v[2].eval(t)),
        move |t| Matrix3::from_fn(|i, j| d[3 * i + j].eval(t)),
    ))
}

fn custom_2level_from_table(path: &Path) -> Result<MasterEquation2L, CliError> {
    let (times, rows) = read_numeric_table(path, 13)?;
    let table = Arc::new(InterpolatedTable { times, rows });
    let t2 = table.clone();
    Ok(MasterEquation2L::new(
        "custom_2level",
        move |t| {
            let mut row = [0.0; 12];
            t2.eval(t, &mut row);
            Vector3::new(row[9], row[10], row[11])
        },
        move |t| {
            let mut row = [0.0; 12];
            table.eval(t, &mut row);
            Matrix3::from_fn(|i, j| row[3 * i + j])
        },
    ))
}

fn nlevel_from_table(path: &Path, dim: usize) -> Result<BuiltModel, CliError> {
    let m = dim * dim - 1;
    let (times, rows) = read_numeric_table(path, 1 + 2 * m * m)?;
    let mut matrices = Vec::with_capacity(rows.len());
    for (row, &t) in rows.iter().zip(&times) {
        let matrix = DMatrix::from_fn(m, m, |i, j| {
            let base = 2 * (i * m + j);
            Complex::new(row[base], row[base + 1])
        });
        let d = DecoherenceMatrix::from_matrix(matrix, dim).map_err(|e| {
            CliError::config(format!("{}: row at t = {t}: {e}", path.display()))
        })?;
        matrices.push(d);
    }
    Ok(BuiltModel::NLevel { times, matrices })
}

/// Build the runnable model. `quad_tol` controls the accuracy of precomputed
/// coefficient tables (spin-boson).
pub fn build(model: &ModelConfig, quad_tol: f64) -> Result<BuiltModel, CliError> {
    match model {
        ModelConfig::Phase { rate } => Ok(BuiltModel::TwoLevel {
            me: phase_damping(rate_from_waveform(rate)?),
            coeffs: None,
            omega_a: 1.0,
        }),
        ModelConfig::Amplitude { rate } => Ok(BuiltModel::TwoLevel {
            me: amplitude_damping(rate_from_waveform(rate)?),
            coeffs: None,
            omega_a: 1.0,
        }),
        ModelConfig::SpinBoson {
            alpha,
            cutoff,
            omega_a,
            unital,
        } => {
            let params = SpinBosonParams {
                alpha: *alpha,
                cutoff: *cutoff,
            };
            let coeffs = Arc::new(spin_boson_coefficients(params, 1.0, quad_tol.min(1e-9))?);
            let me = if *unital {
                spin_boson_model_unital(coeffs.clone(), *omega_a)
            } else {
                spin_boson_model(coeffs.clone(), *omega_a)
            };
            Ok(BuiltModel::TwoLevel {
                me,
                coeffs: Some(coeffs),
                omega_a: *omega_a,
            })
        }
        ModelConfig::Custom2Level {
            damping,
            drift,
            table,
        } => {
            let me = match (damping, drift, table) {
                (Some(d), Some(v), None) => custom_2level_from_waveforms(d, v)?,
                (None, None, Some(path)) => custom_2level_from_table(path)?,
                _ => unreachable!("config validation enforces one source"),
            };
            Ok(BuiltModel::TwoLevel {
                me,
                coeffs: None,
                omega_a: 1.0,
            })
        }
        ModelConfig::CustomNLevel { table, dim } => nlevel_from_table(table, *dim),
    }
}
