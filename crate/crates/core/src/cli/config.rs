use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Rational,
    Friedrichs,
}

/// Both parameter sets are kept; `kind` picks the one used by experiments
/// that accept either model. Friedrichs-only experiments always read the
/// Friedrichs set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelConfig {
    pub kind: ModelKind,
    pub e_r: f64,
    pub gamma: f64,
    /// Second width for the S-forgetting contrast.
    pub gamma_alt: f64,
    pub omega0: f64,
    pub lambda: f64,
    pub form_factor: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub grid_n: usize,
    pub grid_span: f64,
    pub model: ModelConfig,
    pub alpha_list: Vec<f64>,
    pub t_list: Vec<f64>,
    pub s_grid: Vec<f64>,
    pub tol_overrides: BTreeMap<String, f64>,
    #[serde(skip)]
    pub output_format: OutputFormat,
    #[serde(skip)]
    pub output_path: Option<PathBuf>,
    pub seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            grid_n: 4096,
            grid_span: 24.0,
            model: ModelConfig {
                kind: ModelKind::Rational,
                e_r: 1.0,
                gamma: 0.1,
                gamma_alt: 0.4,
                omega0: 1.0,
                lambda: 0.1,
                form_factor: "sqrt-rational".into(),
            },
            alpha_list: vec![0.25, 0.5, 1.0],
            t_list: vec![0.5, 1.0, 2.0],
            s_grid: (0..=200).map(|i| -1.0 + 0.01 * f64::from(i)).collect(),
            tol_overrides: BTreeMap::new(),
            output_format: OutputFormat::Json,
            output_path: None,
            seed: 0,
        }
    }
}

fn parse_f64(key: &str, v: &str) -> Result<f64> {
    v.trim()
        .parse::<f64>()
        .map_err(|_| Error::Configuration(format!("`{key}`: `{v}` is not a number")))
}

fn parse_list(key: &str, v: &str) -> Result<Vec<f64>> {
    v.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_f64(key, s))
        .collect()
}

/// `lo:step:hi` or a comma list.
fn parse_s_grid(v: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = v.split(':').collect();
    if parts.len() != 3 {
        return parse_list("s_grid", v);
    }
    let (lo, step, hi) = (
        parse_f64("s_grid", parts[0])?,
        parse_f64("s_grid", parts[1])?,
        parse_f64("s_grid", parts[2])?,
    );
    if !(step > 0.0 && hi >= lo && (hi - lo) / step <= 1e6) {
        return Err(Error::Configuration(format!("bad s_grid range `{v}`")));
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize;
    Ok((0..=count).map(|i| lo + step * i as f64).collect())
}

impl ExperimentConfig {
    /// Applies one `key = value` setting. Keys are shared by the config file
    /// and the command-line flags.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim();
        let value = value.trim();
        let m = &mut self.model;
        match key {
            "grid_n" => {
                self.grid_n = value
                    .parse()
                    .map_err(|_| Error::Configuration(format!("`grid_n`: `{value}` is not an integer")))?
            }
            "grid_span" => self.grid_span = parse_f64(key, value)?,
            "model" => {
                m.kind = match value {
                    "rational" => ModelKind::Rational,
                    "friedrichs" => ModelKind::Friedrichs,
                    _ => return Err(Error::Configuration(format!("unknown model `{value}`"))),
                }
            }
            "e_r" => m.e_r = parse_f64(key, value)?,
            "gamma" => m.gamma = parse_f64(key, value)?,
            "gamma_alt" => m.gamma_alt = parse_f64(key, value)?,
            "omega0" => m.omega0 = parse_f64(key, value)?,
            "lambda" => m.lambda = parse_f64(key, value)?,
            "form_factor" => m.form_factor = value.to_string(),
            "alpha" | "alpha_list" => self.alpha_list = parse_list(key, value)?,
            "t" | "t_list" => self.t_list = parse_list(key, value)?,
            "s_grid" => self.s_grid = parse_s_grid(value)?,
            "format" | "output_format" => {
                self.output_format = match value {
                    "csv" => OutputFormat::Csv,
                    "json" => OutputFormat::Json,
                    _ => return Err(Error::Configuration(format!("unknown format `{value}`"))),
                }
            }
            "out" | "output_path" => self.output_path = Some(PathBuf::from(value)),
            "seed" => {
                self.seed = value
                    .parse()
                    .map_err(|_| Error::Configuration(format!("`seed`: `{value}` is not an integer")))?
            }
            "tol" => {
                let (name, v) = value
                    .split_once('=')
                    .ok_or_else(|| Error::Configuration(format!("`tol` expects name=value, got `{value}`")))?;
                self.tol_overrides
                    .insert(name.trim().to_string(), parse_f64("tol", v)?);
            }
            _ => {
                if let Some(name) = key.strip_prefix("tol.") {
                    self.tol_overrides
                        .insert(name.to_string(), parse_f64(key, value)?);
                } else {
                    return Err(Error::Configuration(format!("unknown key `{key}`")));
                }
            }
        }
        Ok(())
    }

    /// Parses a `key = value` file body on top of the defaults.
    pub fn from_file_text(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                Error::Configuration(format!("line {}: expected `key = value`", lineno + 1))
            })?;
            cfg.set(k, v)?;
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.grid_n.is_power_of_two() || self.grid_n < 16 {
            return Err(Error::Configuration(format!(
                "grid_n = {} must be a power of two >= 16",
                self.grid_n
            )));
        }
        if !(self.grid_span.is_finite() && self.grid_span > 0.0) {
            return Err(Error::Configuration("grid_span must be positive".into()));
        }
        let m = &self.model;
        for (name, v) in [
            ("e_r", m.e_r),
            ("gamma", m.gamma),
            ("gamma_alt", m.gamma_alt),
            ("omega0", m.omega0),
            ("lambda", m.lambda),
        ] {
            if !v.is_finite() {
                return Err(Error::Configuration(format!("{name} must be finite")));
            }
        }
        if m.form_factor != "sqrt-rational" {
            return Err(Error::Configuration(format!(
                "unknown form factor `{}`",
                m.form_factor
            )));
        }
        for (name, list) in [
            ("alpha", &self.alpha_list),
            ("t", &self.t_list),
            ("s_grid", &self.s_grid),
        ] {
            if list.iter().any(|v| !v.is_finite()) {
                return Err(Error::Configuration(format!("{name} has a non-finite entry")));
            }
        }
        if let Some((k, v)) = self.tol_overrides.iter().find(|(_, v)| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::Configuration(format!("tolerance {k} = {v} must be positive")));
        }
        Ok(())
    }

    /// SHA-256 over the canonical JSON of the semantic fields; output
    /// location and format are excluded.
    pub fn hash(&self) -> String {
        let canonical = serde_json::to_value(self).expect("config serializes");
        let digest = Sha256::digest(canonical.to_string().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}
