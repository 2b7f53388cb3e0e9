//! Command-line flags, the optional JSON config file that mirrors them, and
//! their resolution into a [`RunSpec`]. Flags win over the config file.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::model_spec::{parse_model, parse_prescription};
use crate::spec::{Axis, Command, Format, Geometry, Range, RunSpec};
use crate::{CliError, Result};

#[derive(Debug, Parser)]
#[command(name = "casimir", version, about = "Casimir free energy, pressure and entropy from the Lifshitz formula")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Sub,

    /// JSON file whose keys mirror the flags (e.g. {"model": "plasma:12.5", "quad": {"rel_tol": 1e-8}}).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Worker threads for the parallel parts (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<FormatArg>,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(flatten)]
    pub quad: QuadArgs,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Evaluate a single (a, T) point.
    Eval(PointArgs),
    /// Sweep over a range of gaps and/or temperatures.
    Sweep(PointArgs),
    /// Relative temperature corrections for the three reference configurations.
    Fig1(PointArgs),
    /// Run the consistency-check battery.
    Check,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Default, Args)]
pub struct PointArgs {
    /// ideal | plasma:W | drude:W,G | dielectric:EPS (W, G in eV).
    #[arg(long)]
    pub model: Option<String>,

    /// as-is | ideal-metal-sdm | modified.
    #[arg(long)]
    pub prescription: Option<String>,

    /// Gap in µm.
    #[arg(long = "a", allow_negative_numbers = true)]
    pub a: Option<f64>,

    /// Temperature in K (0 selects the zero-temperature integral).
    #[arg(long = "T", allow_negative_numbers = true)]
    pub t: Option<f64>,

    /// Gap range MIN:MAX in µm.
    #[arg(long = "a-range")]
    pub a_range: Option<String>,

    /// Temperature range MIN:MAX in K.
    #[arg(long = "T-range")]
    pub t_range: Option<String>,

    /// Points per range.
    #[arg(long)]
    pub steps: Option<usize>,

    /// Sphere radius in µm; switches to the sphere-plate geometry.
    #[arg(long = "R", allow_negative_numbers = true)]
    pub radius: Option<f64>,

    /// Also compute the entropy (eval only).
    #[arg(long)]
    pub entropy: bool,
}

#[derive(Debug, Default, Args)]
pub struct QuadArgs {
    #[arg(long = "quad.rel-tol", global = true, env = "CASIMIR_QUAD_RELTOL")]
    pub rel_tol: Option<f64>,
    #[arg(long = "quad.tail-tol", global = true)]
    pub tail_tol: Option<f64>,
    #[arg(long = "quad.max-terms", global = true)]
    pub max_terms: Option<usize>,
    #[arg(long = "quad.max-subdivisions", global = true)]
    pub max_subdivisions: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub model: Option<String>,
    pub prescription: Option<String>,
    pub a: Option<f64>,
    #[serde(rename = "T")]
    pub t: Option<f64>,
    pub a_range: Option<String>,
    #[serde(rename = "T_range")]
    pub t_range: Option<String>,
    pub steps: Option<usize>,
    #[serde(rename = "R")]
    pub radius: Option<f64>,
    pub entropy: Option<bool>,
    pub format: Option<FormatArg>,
    pub output: Option<PathBuf>,
    pub threads: Option<usize>,
    #[serde(default)]
    pub quad: QuadConfig,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadConfig {
    pub rel_tol: Option<f64>,
    pub tail_tol: Option<f64>,
    pub max_terms: Option<usize>,
    pub max_subdivisions: Option<usize>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("invalid config {}: {e}", path.display())))
    }
}

impl Cli {
    /// Thread count requested on the command line or in the config file.
    pub fn threads(&self) -> Result<Option<usize>> {
        let cfg = self.load_config()?;
        Ok(self.threads.or(cfg.threads))
    }

    fn load_config(&self) -> Result<ConfigFile> {
        match &self.config {
            Some(p) => ConfigFile::load(p),
            None => Ok(ConfigFile::default()),
        }
    }

    pub fn to_spec(&self) -> Result<RunSpec> {
        let cfg = self.load_config()?;
        let (command, point) = match &self.command {
            Sub::Eval(p) => (Command::Eval, Some(p)),
            Sub::Sweep(p) => (Command::Sweep, Some(p)),
            Sub::Fig1(p) => (Command::Fig1, Some(p)),
            Sub::Check => (Command::Check, None),
        };
        let empty = PointArgs::default();
        let p = point.unwrap_or(&empty);
        let mut spec = RunSpec::new(command);

        if let Some(m) = p.model.as_ref().or(cfg.model.as_ref()) {
            spec.model = Some(parse_model(m)?);
        }
        if let Some(s) = p.prescription.as_ref().or(cfg.prescription.as_ref()) {
            spec.prescription = parse_prescription(s)?;
        }
        let default_steps = if command == Command::Fig1 { 41 } else { 10 };
        let steps = p.steps.or(cfg.steps).unwrap_or(default_steps);
        let a_range = p.a_range.as_ref().or(cfg.a_range.as_ref());
        let t_range = p.t_range.as_ref().or(cfg.t_range.as_ref());
        let a = p.a.or(cfg.a);
        let t = p.t.or(cfg.t);
        if a_range.is_some() && a.is_some() {
            return Err(CliError::Usage("give either --a or --a-range, not both".into()));
        }
        if t_range.is_some() && t.is_some() {
            return Err(CliError::Usage("give either --T or --T-range, not both".into()));
        }
        spec.a_um = match (a_range, a) {
            (Some(r), _) => Axis::Range(Range::parse(r, steps)?),
            (None, Some(a)) => Axis::Fixed(a),
            (None, None) if command == Command::Fig1 => Axis::Range(Range::new(1.0, 5.0, steps)?),
            (None, None) => Axis::Fixed(1.0),
        };
        spec.t_kelvin = match (t_range, t) {
            (Some(r), _) => Axis::Range(Range::parse(r, steps)?),
            (None, Some(t)) => Axis::Fixed(t),
            (None, None) => Axis::Fixed(300.0),
        };
        if command == Command::Sweep
            && !matches!(spec.a_um, Axis::Range(_))
            && !matches!(spec.t_kelvin, Axis::Range(_))
        {
            return Err(CliError::Usage("sweep needs --a-range and/or --T-range".into()));
        }
        if command == Command::Fig1 && !matches!(spec.t_kelvin, Axis::Fixed(_)) {
            return Err(CliError::Usage("fig1 takes a single temperature".into()));
        }
        if let Some(r) = p.radius.or(cfg.radius) {
            spec.geometry = Geometry::SpherePlate { radius_um: r };
        }
        spec.entropy = p.entropy || cfg.entropy.unwrap_or(false);
        if let Some(f) = self.format.or(cfg.format) {
            spec.format = match f {
                FormatArg::Csv => Format::Csv,
                FormatArg::Json => Format::Json,
            };
        }
        spec.output = self.output.clone().or(cfg.output);

        let q = &mut spec.quad;
        if let Some(v) = self.quad.rel_tol.or(cfg.quad.rel_tol) {
            q.rel_tol = v;
        }
        if let Some(v) = self.quad.tail_tol.or(cfg.quad.tail_tol) {
            q.matsubara_tail_tol = v;
        }
        if let Some(v) = self.quad.max_terms.or(cfg.quad.max_terms) {
            q.max_terms = v;
        }
        if let Some(v) = self.quad.max_subdivisions.or(cfg.quad.max_subdivisions) {
            q.max_subdivisions = v;
        }
        spec.validate()?;
        Ok(spec)
    }
}
