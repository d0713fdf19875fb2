//! Sectioned key=value config files (INI dialect), `--set` overrides, and the
//! validated `RunConfig` the pipelines consume.
//!
//! Dialect: `[section]` headers, `key = value` pairs, `#` or `;` comments
//! (full-line or trailing), blank lines ignored. Keys are case-sensitive.
//! Overrides use dotted paths: `--set run.t_end=3`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::CliError;

/// Raw parsed file: section → key → value, everything strings.
#[derive(Debug, Clone, Default)]
pub struct Ini {
    pub sections: BTreeMap<String, BTreeMap<String, String>>,
}

impl Ini {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut ini = Ini::default();
        let mut current: Option<String> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = strip_comment(raw).trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[') {
                let name = name
                    .strip_suffix(']')
                    .ok_or_else(|| CliError::config(format!("line {}: unterminated section header `{raw}`", lineno + 1)))?
                    .trim();
                if name.is_empty() {
                    return Err(CliError::config(format!("line {}: empty section name", lineno + 1)));
                }
                ini.sections.entry(name.to_string()).or_default();
                current = Some(name.to_string());
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::config(format!(
                    "line {}: expected `key = value`, got `{raw}`",
                    lineno + 1
                )));
            };
            let section = current
                .clone()
                .ok_or_else(|| CliError::config(format!("line {}: key before any [section]", lineno + 1)))?;
            let key = key.trim();
            if key.is_empty() {
                return Err(CliError::config(format!("line {}: empty key", lineno + 1)));
            }
            ini.sections
                .get_mut(&section)
                .unwrap()
                .insert(key.to_string(), value.trim().to_string());
        }
        Ok(ini)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Apply one `section.key=value` override.
    pub fn apply_set(&mut self, spec: &str) -> Result<(), CliError> {
        let (path, value) = spec
            .split_once('=')
            .ok_or_else(|| CliError::config(format!("--set needs section.key=value, got `{spec}`")))?;
        let (section, key) = path
            .trim()
            .split_once('.')
            .ok_or_else(|| CliError::config(format!("--set path must be section.key, got `{path}`")))?;
        if section.is_empty() || key.is_empty() {
            return Err(CliError::config(format!("--set path must be section.key, got `{path}`")));
        }
        self.sections
            .entry(section.to_string())
            .or_default()
            .insert(key.to_string(), value.trim().to_string());
        Ok(())
    }

    fn get(&self, section: &str, key: &str) -> Option<&str> {
        self.sections.get(section)?.get(key).map(|s| s.as_str())
    }

    /// Deterministic `config.section.key: value` lines for the metadata footer.
    pub fn resolved_lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (section, kv) in &self.sections {
            for (key, value) in kv {
                out.push(format!("config.{section}.{key}: {value}"));
            }
        }
        out
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find(['#', ';']) {
        Some(pos) => &line[..pos],
        None => line,
    }
}

/// Which model family a run drives.
#[derive(Debug, Clone)]
pub enum ModelConfig {
    Phase {
        rate: String,
    },
    Amplitude {
        rate: String,
    },
    SpinBoson {
        alpha: f64,
        cutoff: f64,
        omega_a: f64,
        unital: bool,
    },
    Custom2Level {
        /// Row-major waveform expressions for D(t); `None` when a table file
        /// supplies the generator instead.
        damping: Option<[String; 9]>,
        drift: Option<[String; 3]>,
        table: Option<PathBuf>,
    },
    CustomNLevel {
        table: PathBuf,
        dim: usize,
    },
}

impl ModelConfig {
    pub fn kind_name(&self) -> &'static str {
        match self {
            ModelConfig::Phase { .. } => "phase",
            ModelConfig::Amplitude { .. } => "amplitude",
            ModelConfig::SpinBoson { .. } => "spin_boson",
            ModelConfig::Custom2Level { .. } => "custom_2level",
            ModelConfig::CustomNLevel { .. } => "custom_nlevel",
        }
    }

    /// Parameter names a sweep may vary for this model.
    pub fn sweepable(&self) -> &'static [&'static str] {
        match self {
            ModelConfig::SpinBoson { .. } => &["alpha", "cutoff", "omega_a"],
            _ => &[],
        }
    }

    /// Return a copy with the named parameter set to `value`.
    pub fn with_parameter(&self, name: &str, value: f64) -> Result<ModelConfig, CliError> {
        match self {
            ModelConfig::SpinBoson {
                alpha,
                cutoff,
                omega_a,
                unital,
            } => {
                let (mut alpha, mut cutoff, mut omega_a) = (*alpha, *cutoff, *omega_a);
                match name {
                    "alpha" => alpha = value,
                    "cutoff" => cutoff = value,
                    "omega_a" => omega_a = value,
                    _ => {
                        return Err(CliError::config(format!(
                            "parameter `{name}` does not belong to model spin_boson"
                        )))
                    }
                }
                Ok(ModelConfig::SpinBoson {
                    alpha,
                    cutoff,
                    omega_a,
                    unital: *unital,
                })
            }
            other => Err(CliError::config(format!(
                "model `{}` has no sweepable parameter `{name}`",
                other.kind_name()
            ))),
        }
    }
}

/// Requested propagation horizon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Horizon {
    Auto,
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepScale {
    Linear,
    Log,
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub parameter: String,
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub scale: SweepScale,
}

impl SweepConfig {
    /// The parameter values in sweep order.
    pub fn points(&self) -> Vec<f64> {
        if self.count == 0 {
            return Vec::new();
        }
        if self.count == 1 {
            return vec![self.min];
        }
        let n = self.count;
        (0..n)
            .map(|k| {
                let s = k as f64 / (n - 1) as f64;
                match self.scale {
                    SweepScale::Linear => self.min + s * (self.max - self.min),
                    SweepScale::Log => (self.min.ln() + s * (self.max.ln() - self.min.ln())).exp(),
                }
            })
            .collect()
    }
}

/// Which output files a run writes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Outputs {
    pub measures: bool,
    pub witnesses: bool,
    pub cp_trace: bool,
}

impl Default for Outputs {
    fn default() -> Self {
        Self {
            measures: true,
            witnesses: true,
            cp_trace: false,
        }
    }
}

/// Fully validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub model: ModelConfig,
    pub t_end: Horizon,
    pub ode_tol: f64,
    pub quad_tol: f64,
    pub cp_tol: f64,
    pub outputs: Outputs,
    pub sweep: Option<SweepConfig>,
    /// The raw resolved key=value pairs, echoed into output metadata.
    pub resolved: Vec<String>,
}

const KNOWN_SECTIONS: &[&str] = &["model", "run", "sweep", "output"];
const MODEL_KEYS: &[&str] = &[
    "kind", "rate", "alpha", "cutoff", "omega_a", "unital", "table", "dim", "d11", "d12", "d13",
    "d21", "d22", "d23", "d31", "d32", "d33", "v1", "v2", "v3",
];
const RUN_KEYS: &[&str] = &["t_end", "ode_tol", "quad_tol", "cp_tol"];
const SWEEP_KEYS: &[&str] = &["parameter", "min", "max", "count", "scale"];
const OUTPUT_KEYS: &[&str] = &["outputs"];

fn parse_f64(ini: &Ini, section: &str, key: &str) -> Result<Option<f64>, CliError> {
    match ini.get(section, key) {
        None => Ok(None),
        Some(s) => s
            .parse::<f64>()
            .map(Some)
            .map_err(|_| CliError::config(format!("{section}.{key}: not a number: `{s}`"))),
    }
}

fn parse_bool(ini: &Ini, section: &str, key: &str) -> Result<Option<bool>, CliError> {
    match ini.get(section, key) {
        None => Ok(None),
        Some("true") => Ok(Some(true)),
        Some("false") => Ok(Some(false)),
        Some(s) => Err(CliError::config(format!(
            "{section}.{key}: expected true or false, got `{s}`"
        ))),
    }
}

impl RunConfig {
    pub fn from_ini(ini: &Ini, config_dir: &Path) -> Result<Self, CliError> {
        for (section, kv) in &ini.sections {
            if !KNOWN_SECTIONS.contains(&section.as_str()) {
                return Err(CliError::config(format!("unknown section [{section}]")));
            }
            let known: &[&str] = match section.as_str() {
                "model" => MODEL_KEYS,
                "run" => RUN_KEYS,
                "sweep" => SWEEP_KEYS,
                "output" => OUTPUT_KEYS,
                _ => unreachable!(),
            };
            for key in kv.keys() {
                if !known.contains(&key.as_str()) {
                    return Err(CliError::config(format!("unknown key {section}.{key}")));
                }
            }
        }

        let kind = ini
            .get("model", "kind")
            .ok_or_else(|| CliError::config("missing model.kind"))?;
        let model = match kind {
            "phase" | "amplitude" => {
                let rate = ini
                    .get("model", "rate")
                    .ok_or_else(|| CliError::config(format!("model.rate is required for kind={kind}")))?
                    .to_string();
                crate::waveform::parse(&rate)
                    .map_err(|e| CliError::config(format!("model.rate: {e}")))?;
                if kind == "phase" {
                    ModelConfig::Phase { rate }
                } else {
                    ModelConfig::Amplitude { rate }
                }
            }
            "spin_boson" => {
                let alpha = parse_f64(ini, "model", "alpha")?
                    .ok_or_else(|| CliError::config("model.alpha is required for spin_boson"))?;
                let cutoff = parse_f64(ini, "model", "cutoff")?
                    .ok_or_else(|| CliError::config("model.cutoff is required for spin_boson"))?;
                let omega_a = parse_f64(ini, "model", "omega_a")?.unwrap_or(1.0);
                for (name, v) in [("alpha", alpha), ("cutoff", cutoff), ("omega_a", omega_a)] {
                    if !(v > 0.0 && v.is_finite()) {
                        return Err(CliError::config(format!("model.{name} must be positive")));
                    }
                }
                let unital = parse_bool(ini, "model", "unital")?.unwrap_or(false);
                ModelConfig::SpinBoson {
                    alpha,
                    cutoff,
                    omega_a,
                    unital,
                }
            }
            "custom_2level" => {
                let table = ini.get("model", "table").map(|p| resolve_path(config_dir, p));
                let entry_keys = [
                    "d11", "d12", "d13", "d21", "d22", "d23", "d31", "d32", "d33",
                ];
                let any_waveform = entry_keys
                    .iter()
                    .chain(["v1", "v2", "v3"].iter())
                    .any(|k| ini.get("model", k).is_some());
                if table.is_some() && any_waveform {
                    return Err(CliError::config(
                        "custom_2level: give either a table or waveform entries, not both",
                    ));
                }
                if let Some(table) = table {
                    ModelConfig::Custom2Level {
                        damping: None,
                        drift: None,
                        table: Some(table),
                    }
                } else {
                    let mut damping: [String; 9] = Default::default();
                    for (slot, key) in damping.iter_mut().zip(entry_keys) {
                        *slot = ini.get("model", key).unwrap_or("const:0").to_string();
                        crate::waveform::parse(slot)
                            .map_err(|e| CliError::config(format!("model.{key}: {e}")))?;
                    }
                    let mut drift: [String; 3] = Default::default();
                    for (slot, key) in drift.iter_mut().zip(["v1", "v2", "v3"]) {
                        *slot = ini.get("model", key).unwrap_or("const:0").to_string();
                        crate::waveform::parse(slot)
                            .map_err(|e| CliError::config(format!("model.{key}: {e}")))?;
                    }
                    ModelConfig::Custom2Level {
                        damping: Some(damping),
                        drift: Some(drift),
                        table: None,
                    }
                }
            }
            "custom_nlevel" => {
                let table = ini
                    .get("model", "table")
                    .ok_or_else(|| CliError::config("model.table is required for custom_nlevel"))?;
                let dim = ini
                    .get("model", "dim")
                    .ok_or_else(|| CliError::config("model.dim is required for custom_nlevel"))?
                    .parse::<usize>()
                    .map_err(|_| CliError::config("model.dim: not an integer"))?;
                if dim < 2 {
                    return Err(CliError::config("model.dim must be at least 2"));
                }
                ModelConfig::CustomNLevel {
                    table: resolve_path(config_dir, table),
                    dim,
                }
            }
            other => {
                return Err(CliError::config(format!(
                    "model.kind must be one of phase, amplitude, spin_boson, custom_2level, custom_nlevel; got `{other}`"
                )))
            }
        };

        let t_end = match ini.get("run", "t_end") {
            None | Some("auto") => Horizon::Auto,
            Some(s) => {
                let v = s
                    .parse::<f64>()
                    .map_err(|_| CliError::config(format!("run.t_end: expected a time or `auto`, got `{s}`")))?;
                if !(v > 0.0) {
                    return Err(CliError::config("run.t_end must be positive"));
                }
                Horizon::Fixed(v)
            }
        };
        let ode_tol = parse_f64(ini, "run", "ode_tol")?.unwrap_or(1e-10);
        let quad_tol = parse_f64(ini, "run", "quad_tol")?.unwrap_or(1e-9);
        let cp_tol = parse_f64(ini, "run", "cp_tol")?.unwrap_or(1e-6);
        for (name, v) in [("ode_tol", ode_tol), ("quad_tol", quad_tol), ("cp_tol", cp_tol)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::config(format!("run.{name} must be a positive number")));
            }
        }

        let outputs = match ini.get("output", "outputs") {
            None => Outputs::default(),
            Some(list) => {
                let mut outputs = Outputs {
                    measures: false,
                    witnesses: false,
                    cp_trace: false,
                };
                for item in list.split(',') {
                    match item.trim() {
                        "measures" => outputs.measures = true,
                        "witnesses" => outputs.witnesses = true,
                        "cp_trace" => outputs.cp_trace = true,
                        other => {
                            return Err(CliError::config(format!(
                                "output.outputs: unknown entry `{other}`"
                            )))
                        }
                    }
                }
                outputs
            }
        };

        let sweep = if ini.sections.contains_key("sweep") {
            let parameter = ini
                .get("sweep", "parameter")
                .ok_or_else(|| CliError::config("sweep.parameter is required"))?
                .to_string();
            if !model.sweepable().contains(&parameter.as_str()) {
                return Err(CliError::config(format!(
                    "sweep parameter `{parameter}` does not belong to model `{}`",
                    model.kind_name()
                )));
            }
            let min = parse_f64(ini, "sweep", "min")?
                .ok_or_else(|| CliError::config("sweep.min is required"))?;
            let max = parse_f64(ini, "sweep", "max")?
                .ok_or_else(|| CliError::config("sweep.max is required"))?;
            let count = ini
                .get("sweep", "count")
                .ok_or_else(|| CliError::config("sweep.count is required"))?
                .parse::<usize>()
                .map_err(|_| CliError::config("sweep.count: not an integer"))?;
            let scale = match ini.get("sweep", "scale") {
                None | Some("linear") => SweepScale::Linear,
                Some("log") => SweepScale::Log,
                Some(other) => {
                    return Err(CliError::config(format!(
                        "sweep.scale must be linear or log, got `{other}`"
                    )))
                }
            };
            if min > max {
                return Err(CliError::config("sweep.min must not exceed sweep.max"));
            }
            if scale == SweepScale::Log && min <= 0.0 {
                return Err(CliError::config("log sweeps need sweep.min > 0"));
            }
            Some(SweepConfig {
                parameter,
                min,
                max,
                count,
                scale,
            })
        } else {
            None
        };

        Ok(RunConfig {
            model,
            t_end,
            ode_tol,
            quad_tol,
            cp_tol,
            outputs,
            sweep,
            resolved: ini.resolved_lines(),
        })
    }
}

/// Table paths are resolved relative to the config file's directory.
fn resolve_path(config_dir: &Path, p: &str) -> PathBuf {
    let path = PathBuf::from(p);
    if path.is_absolute() {
        path
    } else {
        config_dir.join(path)
    }
}
