//! Command-line driver: one named experiment per command, reported as
//! sorted JSON or a `metric,value` CSV table.
//!
//! Exit codes: 0 all verdicts pass, 1 some verdict fails, 2 usage or
//! validation error, 3 I/O error.

mod config;
mod experiments;
mod report;

use std::path::PathBuf;

use clap::Parser;

pub use config::{ExperimentConfig, ModelConfig, ModelKind, OutputFormat};
pub use experiments::{run, COMMANDS};
pub use report::{emit_report, ExperimentReport, Provenance, Relation, Verdict};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "hscat", version, about = "Hardy-class and resonance scattering experiments")]
struct Args {
    /// One of: proposition, delta, timeevo, friedrichs-pole, friedrichs-survival,
    /// kets-sandwich, kets-relation, kets-pathology, free-ket, seminorm.
    command: String,
    /// `key = value` file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    grid_n: Option<String>,
    #[arg(long)]
    grid_span: Option<String>,
    /// rational or friedrichs.
    #[arg(long)]
    model: Option<String>,
    #[arg(long)]
    e_r: Option<String>,
    #[arg(long)]
    gamma: Option<String>,
    #[arg(long)]
    gamma_alt: Option<String>,
    #[arg(long)]
    omega0: Option<String>,
    #[arg(long)]
    lambda: Option<String>,
    /// Comma-separated list.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// Comma-separated list.
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    /// `lo:step:hi` or a comma-separated list.
    #[arg(long, allow_hyphen_values = true)]
    s_grid: Option<String>,
    /// csv or json.
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<String>,
    /// `name=value`, repeatable.
    #[arg(long)]
    tol: Vec<String>,
}

impl Args {
    fn settings(&self) -> Vec<(&'static str, String)> {
        let mut out = Vec::new();
        let mut push = |k: &'static str, v: &Option<String>| {
            if let Some(v) = v {
                out.push((k, v.clone()));
            }
        };
        push("grid_n", &self.grid_n);
        push("grid_span", &self.grid_span);
        push("model", &self.model);
        push("e_r", &self.e_r);
        push("gamma", &self.gamma);
        push("gamma_alt", &self.gamma_alt);
        push("omega0", &self.omega0);
        push("lambda", &self.lambda);
        push("alpha", &self.alpha);
        push("t", &self.t);
        push("s_grid", &self.s_grid);
        push("format", &self.format);
        push("seed", &self.seed);
        out.extend(self.tol.iter().map(|t| ("tol", t.clone())));
        if let Some(p) = &self.out {
            out.push(("out", p.to_string_lossy().into_owned()));
        }
        out
    }
}

/// Parses `argv`, runs the experiment, writes the report, and returns the
/// process exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    let mut cfg = match &args.config {
        None => ExperimentConfig::default(),
        Some(p) => match std::fs::read_to_string(p) {
            Ok(text) => match ExperimentConfig::from_file_text(&text) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("{}: {e}", p.display());
                    return EXIT_USAGE;
                }
            },
            Err(e) => {
                eprintln!("cannot read {}: {e}", p.display());
                return EXIT_IO;
            }
        },
    };
    for (k, v) in args.settings() {
        if let Err(e) = cfg.set(k, &v) {
            eprintln!("--{}: {e}", k.replace('_', "-"));
            return EXIT_USAGE;
        }
    }
    let report = match run(&args.command, &cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{e}");
            return EXIT_USAGE;
        }
    };
    if let Err(e) = emit_report(&report, cfg.output_format, cfg.output_path.as_deref()) {
        eprintln!("cannot write report: {e}");
        return EXIT_IO;
    }
    if report.passed() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}
