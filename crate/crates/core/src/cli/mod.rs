//! Command-line front end: argument parsing, run configuration and report writing.
//!
//! Every run writes `summary.json` (schema version 1) to the output directory, plus
//! CSV and/or JSON tables depending on `--format`.

mod commands;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::io;
use crate::quadrature::QuadratureSpec;
use crate::transforms::KAPPA;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Both,
}

impl OutputFormat {
    fn csv(self) -> bool {
        matches!(self, OutputFormat::Csv | OutputFormat::Both)
    }

    fn json(self) -> bool {
        matches!(self, OutputFormat::Json | OutputFormat::Both)
    }
}

/// Settings shared by every subcommand. Loaded from `--config`, then overridden by flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub quadrature: QuadratureSpec,
    #[serde(skip_serializing)]
    pub output_dir: PathBuf,
    pub format: OutputFormat,
    pub seed: u64,
    pub precision_report: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            quadrature: QuadratureSpec::default(),
            output_dir: PathBuf::from("output"),
            format: OutputFormat::Both,
            seed: 0,
            precision_report: false,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "jacobi-harmonic",
    version,
    about = "Jacobi analysis and quasi-analyticity diagnostics on rank-one symmetric spaces"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// JSON run configuration; flags below take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub output_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Seed for randomized test profiles.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Add error estimates to summary.json.
    #[arg(long, global = true)]
    pub precision_report: bool,
    #[arg(long, global = true)]
    pub t_max: Option<f64>,
    #[arg(long, global = true)]
    pub lambda_max: Option<f64>,
    #[arg(long, global = true)]
    pub panels: Option<usize>,
    #[arg(long, global = true)]
    pub points_per_panel: Option<usize>,
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
}

impl GlobalArgs {
    pub fn resolve(&self) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        if let Some(d) = &self.output_dir {
            cfg.output_dir = d.clone();
        }
        if let Some(f) = self.format {
            cfg.format = f;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        cfg.precision_report |= self.precision_report;
        let q = &mut cfg.quadrature;
        q.t_max = self.t_max.unwrap_or(q.t_max);
        q.lambda_max = self.lambda_max.unwrap_or(q.lambda_max);
        q.panels = self.panels.unwrap_or(q.panels);
        q.points_per_panel = self.points_per_panel.unwrap_or(q.points_per_panel);
        q.tolerance = self.tolerance.unwrap_or(q.tolerance);
        q.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spherical function φ_λ^{(α,β)} with ODE residuals.
    Phi(commands::PhiArgs),
    /// Fourier-Jacobi transform, inverse and seeded round trips.
    #[command(subcommand)]
    Transform(commands::TransformCmd),
    /// Abel transform through the slice projection.
    Abel(commands::AbelArgs),
    /// Heat-kernel profile with 𝓕h = e^{-τλ²}.
    Heat(commands::HeatArgs),
    /// Decay profiles θ: Ingham integral, bump construction, case split.
    #[command(subcommand)]
    Ingham(commands::InghamCmd),
    /// Chernoff/Carleman diagnostics.
    #[command(subcommand)]
    Chernoff(commands::ChernoffCmd),
    /// Hyperbolic-space counterexample.
    Counterexample(commands::CounterexampleArgs),
}

/// A numeric table written as `<name>.csv` and/or `<name>.json`.
pub(crate) struct Table {
    pub name: &'static str,
    pub header: &'static [&'static str],
    pub rows: Vec<Vec<f64>>,
}

/// What a subcommand hands back for writing.
#[derive(Default)]
pub(crate) struct Outcome {
    pub inputs: Value,
    pub results: Value,
    pub verdicts: BTreeMap<String, String>,
    pub tables: Vec<Table>,
    pub precision: BTreeMap<String, f64>,
    pub files: Vec<PathBuf>,
}

impl Outcome {
    pub fn verdict(&mut self, key: &str, value: impl Into<String>) {
        self.verdicts.insert(key.to_string(), value.into());
    }
}

pub(crate) fn to_value<T: Serialize>(v: &T) -> Result<Value> {
    Ok(serde_json::to_value(v)?)
}

fn write_outcome(name: &str, cfg: &RunConfig, out: &Outcome) -> Result<PathBuf> {
    std::fs::create_dir_all(&cfg.output_dir)?;
    let mut written: Vec<String> = out.files.iter().map(|p| p.display().to_string()).collect();
    for t in &out.tables {
        if cfg.format.csv() {
            let file = format!("{}.csv", t.name);
            io::write_table(&cfg.output_dir.join(&file), t.header, t.rows.iter().cloned())?;
            written.push(file);
        }
        if cfg.format.json() {
            let file = format!("{}.json", t.name);
            io::write_json(&cfg.output_dir.join(&file), &json!({ "columns": t.header, "rows": t.rows }))?;
            written.push(file);
        }
    }
    let mut summary = json!({
        "schema_version": SCHEMA_VERSION,
        "command": name,
        "version": env!("CARGO_PKG_VERSION"),
        "config": to_value(cfg)?,
        "kappa": KAPPA,
        "inputs": out.inputs,
        "results": out.results,
        "verdicts": out.verdicts,
        "outputs": written,
    });
    if cfg.precision_report {
        summary["precision"] = to_value(&out.precision)?;
    }
    let path = cfg.output_dir.join("summary.json");
    io::write_json(&path, &summary)?;
    Ok(path)
}

fn execute(cli: &Cli) -> Result<()> {
    let cfg = cli.global.resolve()?;
    let (name, outcome) = commands::dispatch(&cli.command, &cfg)?;
    let path = write_outcome(name, &cfg, &outcome)?;
    for (k, v) in &outcome.verdicts {
        println!("{k}: {v}");
    }
    println!("summary written to {}", path.display());
    Ok(())
}

/// Parses `args` (program name first), runs the subcommand and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
