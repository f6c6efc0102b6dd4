use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use super::config::{ExperimentConfig, OutputFormat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Below,
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">")]
    Above,
    #[serde(rename = ">=")]
    AtLeast,
}

impl Relation {
    fn holds(self, measured: f64, threshold: f64) -> bool {
        match self {
            Relation::Below => measured < threshold,
            Relation::AtMost => measured <= threshold,
            Relation::Above => measured > threshold,
            Relation::AtLeast => measured >= threshold,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub metric: String,
    pub measured: f64,
    pub relation: Relation,
    pub threshold: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub version: String,
    pub timestamp: String,
    pub config_hash: String,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub inputs: serde_json::Value,
    pub metrics: BTreeMap<String, f64>,
    pub verdicts: BTreeMap<String, Verdict>,
    pub provenance: Provenance,
}

impl ExperimentReport {
    pub fn new(experiment: &str, config: &ExperimentConfig) -> Self {
        Self {
            experiment: experiment.to_string(),
            inputs: serde_json::to_value(config).expect("config serializes"),
            metrics: BTreeMap::new(),
            verdicts: BTreeMap::new(),
            provenance: Provenance {
                version: env!("CARGO_PKG_VERSION").to_string(),
                timestamp: std::env::var("SOURCE_DATE_EPOCH").unwrap_or_else(|_| "unset".into()),
                config_hash: config.hash(),
                seed: config.seed,
            },
        }
    }

    pub fn metric(&mut self, name: impl Into<String>, value: f64) {
        self.metrics.insert(name.into(), value);
    }

    /// Records `value` as a metric and a verdict on it.
    pub fn check(&mut self, name: impl Into<String>, value: f64, relation: Relation, threshold: f64) {
        let name = name.into();
        self.metric(name.clone(), value);
        self.verdicts.insert(
            name.clone(),
            Verdict {
                metric: name,
                measured: value,
                relation,
                threshold,
                pass: relation.holds(value, threshold),
            },
        );
    }

    pub fn passed(&self) -> bool {
        self.verdicts.values().all(|v| v.pass)
    }

    pub fn to_json(&self) -> String {
        // serde_json maps are ordered, so the output keys come out sorted
        let value = serde_json::to_value(self).expect("report serializes");
        let mut s = serde_json::to_string_pretty(&value).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> std::io::Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["metric", "value"])?;
        for (k, v) in &self.metrics {
            w.write_record([k.as_str(), &v.to_string()])?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }
}

/// Writes the report to `path` through a temporary file in the same
/// directory, or to stdout when no path is given.
pub fn emit_report(report: &ExperimentReport, format: OutputFormat, path: Option<&Path>) -> std::io::Result<()> {
    let body = match format {
        OutputFormat::Json => report.to_json(),
        OutputFormat::Csv => report.to_csv()?,
    };
    match path {
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())?;
            out.flush()
        }
        Some(p) => {
            let dir = match p.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(body.as_bytes())?;
            tmp.as_file().sync_all()?;
            tmp.persist(p).map_err(|e| e.error)?;
            Ok(())
        }
    }
}
