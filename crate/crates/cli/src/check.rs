//! Desk-scale battery of physics and numerics checks.
//!
//! Bounds that only guard numerical accuracy widen to `10 × rel_tol` when the
//! quadrature is loosened; bounds on physical statements do not move.

use std::fmt::Write as _;
use std::io::Write;

use casimir::asymptotics::{
    high_t_limits_plasma, ideal_energy_high_temperature, ideal_energy_zero_temperature,
    ideal_pressure_zero_temperature, low_t_energy_plasma, low_t_force_plasma, PlasmaAsymptoticsInput,
};
use casimir::numdiff::central_5pt;
use casimir::units::effective_temperature;
use casimir::{
    entropy_plates, force_plates, force_plates_zero_temperature, free_energy_plates,
    free_energy_plates_zero_temperature, DielectricModelF64, PlatesConfigF64, Prescription, QuadratureSettings,
};
use log::info;
use serde::Serialize;

use crate::run::Baselines;
use crate::{CliError, Result};

const WP: f64 = 12.5;
const GAMMA: f64 = 0.063;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    /// measured ≤ bound
    Upper,
    /// measured > bound
    Lower,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub description: &'static str,
    pub measured: f64,
    pub bound: f64,
    pub bound_kind: BoundKind,
    pub passed: bool,
    /// The check demonstrates a known thermodynamic violation; it is
    /// reported but does not count toward the verdict.
    pub expected_violation: bool,
    pub status: &'static str,
}

impl CheckOutcome {
    fn new(name: &'static str, description: &'static str, measured: f64, bound: f64, kind: BoundKind) -> Self {
        let passed = match kind {
            BoundKind::Upper => measured <= bound,
            BoundKind::Lower => measured > bound,
        };
        Self {
            name,
            description,
            measured,
            bound,
            bound_kind: kind,
            passed,
            expected_violation: false,
            status: if passed { "pass" } else { "fail" },
        }
    }

    fn expected_violation(mut self) -> Self {
        self.expected_violation = true;
        self.status = if self.passed { "predicted violation" } else { "fail" };
        self
    }

    fn failed(name: &'static str, description: &'static str, err: &dyn std::fmt::Display) -> Self {
        info!("check {name} errored: {err}");
        Self {
            name,
            description,
            measured: f64::NAN,
            bound: f64::NAN,
            bound_kind: BoundKind::Upper,
            passed: false,
            expected_violation: false,
            status: "error",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
}

impl CheckReport {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let op = match c.bound_kind {
                BoundKind::Upper => "<=",
                BoundKind::Lower => ">",
            };
            let _ = writeln!(
                s,
                "[{:^19}] {:<32} {:>12.4e} {op} {:<10.3e} {}",
                c.status, c.name, c.measured, c.bound, c.description
            );
        }
        let _ = writeln!(s, "{} of {} checks passed", self.checks.len() - self.failures(), self.checks.len());
        s
    }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

type Measure = casimir::Result<f64>;

/// Runs every check with the given quadrature settings.
pub fn check_report(quad: &QuadratureSettings) -> CheckReport {
    let numeric = |base: f64| base.max(10.0 * quad.rel_tol);
    let pl = DielectricModelF64::Plasma { omega_p: WP };
    let al = DielectricModelF64::Drude { omega_p: WP, gamma: GAMMA };
    let glass = DielectricModelF64::ConstantDielectric { eps0: 7.0 };
    let baselines = Baselines::default();
    let tight = quad.for_differencing();
    let energy = |a: f64, t: f64, m: &DielectricModelF64, p: Prescription, q: &QuadratureSettings| -> Measure {
        Ok(free_energy_plates(&PlatesConfigF64::new(a, t)?, m, p, q)?.value)
    };
    let entropy = |a: f64, t: f64, p: Prescription| -> Measure {
        Ok(entropy_plates(&PlatesConfigF64::new(a, t)?, &pl, p, quad)?.value)
    };

    type Job<'a> = Box<dyn Fn() -> casimir::Result<CheckOutcome> + Sync + 'a>;
    let jobs: Vec<(&'static str, &'static str, Job)> = vec![
        ("ideal-closed-forms", "ideal metal at T = 0 vs closed forms, a = 0.5, 1, 2 um", Box::new(|| {
            let mut worst: f64 = 0.0;
            for a in [0.5, 1.0, 2.0] {
                let m = DielectricModelF64::IdealMetal;
                worst = worst.max(rel(free_energy_plates_zero_temperature(a, &m, quad)?.value, ideal_energy_zero_temperature(a)));
                worst = worst.max(rel(force_plates_zero_temperature(a, &m, quad)?.value, ideal_pressure_zero_temperature(a)));
            }
            Ok(CheckOutcome::new("", "", worst, numeric(1e-6), BoundKind::Upper))
        })),
        ("drude-room-temperature", "|delta_T + 0.17|, Drude as-is, a = 1 um, T = 300 K", Box::new(|| {
            let d = baselines.delta_t(&al, Prescription::AsIs, 1.0, 300.0, quad)?;
            Ok(CheckOutcome::new("", "", (d + 0.17).abs(), 0.04, BoundKind::Upper))
        })),
        ("half-asymptote", "Drude as-is vs half the ideal high-T energy, a = 5 um, t = 5", Box::new(|| {
            let tk = 5.0 * effective_temperature(5.0);
            let e = energy(5.0, tk, &al, Prescription::AsIs, quad)?;
            Ok(CheckOutcome::new("", "", rel(e, 0.5 * ideal_energy_high_temperature(5.0, tk)), numeric(1e-2), BoundKind::Upper))
        })),
        ("low-t-plasma", "plasma E and F vs low-T expansions, a = 0.5, 1, 3 um, t = 0.05, 0.1", Box::new(|| {
            let mut worst: f64 = 0.0;
            for a in [0.5, 1.0, 3.0] {
                for t in [0.05, 0.1] {
                    let tk = t * effective_temperature(a);
                    let inp = PlasmaAsymptoticsInput::new(a, tk, WP)?;
                    let cfg = PlatesConfigF64::new(a, tk)?;
                    worst = worst.max(rel(low_t_energy_plasma(&inp)?, free_energy_plates(&cfg, &pl, Prescription::AsIs, quad)?.value));
                    worst = worst.max(rel(low_t_force_plasma(&inp)?, force_plates(&cfg, &pl, Prescription::AsIs, quad)?.value));
                }
            }
            Ok(CheckOutcome::new("", "", worst, numeric(1e-3), BoundKind::Upper))
        })),
        ("high-t-plasma", "plasma E and F vs high-T limits, a = 5 um, T = 3000 K", Box::new(|| {
            let (a, tk) = (5.0, 3000.0);
            let (ea, fa) = high_t_limits_plasma(&PlasmaAsymptoticsInput::new(a, tk, WP)?)?;
            let cfg = PlatesConfigF64::new(a, tk)?;
            let e = free_energy_plates(&cfg, &pl, Prescription::AsIs, quad)?.value;
            let f = force_plates(&cfg, &pl, Prescription::AsIs, quad)?.value;
            Ok(CheckOutcome::new("", "", rel(ea, e).max(rel(fa, f)), numeric(1e-2), BoundKind::Upper))
        })),
        ("high-t-skin-depth-factor", "finite-conductivity part of high-T E vs -2 delta0/a", Box::new(|| {
            let (a, tk) = (5.0, 3000.0);
            let (ea, _) = high_t_limits_plasma(&PlasmaAsymptoticsInput::new(a, tk, WP)?)?;
            let e = energy(a, tk, &pl, Prescription::AsIs, quad)?;
            let e_id = ideal_energy_high_temperature(a, tk);
            Ok(CheckOutcome::new("", "", rel(e - e_id, ea - e_id), numeric(2e-2), BoundKind::Upper))
        })),
        ("nernst-plasma", "|log-log slope - 2| of plasma entropy over 1..10 K, a = 1 um", Box::new(|| {
            let slope = (entropy(1.0, 10.0, Prescription::AsIs)? / entropy(1.0, 1.0, Prescription::AsIs)?).log10();
            Ok(CheckOutcome::new("", "", (slope - 2.0).abs(), 0.2, BoundKind::Upper))
        })),
        ("nernst-perfect-conductor-term", "relative change of S between 1 K and 2 K (residual entropy)", Box::new(|| {
            let s1 = entropy(1.0, 1.0, Prescription::PerfectConductor)?;
            let s2 = entropy(1.0, 2.0, Prescription::PerfectConductor)?;
            let measured = if s1 > 0.0 && s2 > 0.0 { rel(s2, s1) } else { f64::INFINITY };
            Ok(CheckOutcome::new("", "", measured, 0.05, BoundKind::Upper).expected_violation())
        })),
        ("negative-entropy", "-S of Drude as-is at a = 1 um, T = 300 K (J/m^2/K)", Box::new(|| {
            let s = entropy_plates(&PlatesConfigF64::new(1.0, 300.0)?, &al, Prescription::AsIs, quad)?;
            Ok(CheckOutcome::new("", "", -s.value, 0.0, BoundKind::Lower))
        })),
        ("gamma-continuity-modified", "Drude(gamma = 1e-6) modified vs plasma, a = 1 um, T = 300 K", Box::new(|| {
            let nearly = DielectricModelF64::drude(WP, 1e-6)?;
            let ep = energy(1.0, 300.0, &pl, Prescription::AsIs, quad)?;
            let em = energy(1.0, 300.0, &nearly, Prescription::Modified, quad)?;
            Ok(CheckOutcome::new("", "", rel(em, ep), numeric(1e-4), BoundKind::Upper))
        })),
        ("gamma-discontinuity-as-is", "Drude(gamma = 1e-6) as-is vs plasma, a = 1 um, T = 300 K", Box::new(|| {
            let nearly = DielectricModelF64::drude(WP, 1e-6)?;
            let ep = energy(1.0, 300.0, &pl, Prescription::AsIs, quad)?;
            let ea = energy(1.0, 300.0, &nearly, Prescription::AsIs, quad)?;
            Ok(CheckOutcome::new("", "", rel(ea, ep), 1e-2, BoundKind::Lower))
        })),
        ("force-energy-consistency", "F vs -dE/da, 3 models x a = 0.5, 1, 2 um, T = 300 K", Box::new(|| {
            let mut worst: f64 = 0.0;
            for (m, p) in [(pl, Prescription::AsIs), (al, Prescription::Modified), (glass, Prescription::AsIs)] {
                for a in [0.5, 1.0, 2.0] {
                    let de_da = central_5pt(|a| energy(a, 300.0, &m, p, &tight), a, 1e-3 * a)? * 1e6;
                    let f = force_plates(&PlatesConfigF64::new(a, 300.0)?, &m, p, &tight)?.value;
                    worst = worst.max(rel(-de_da, f));
                }
            }
            Ok(CheckOutcome::new("", "", worst, 1e-4, BoundKind::Upper))
        })),
        ("prescription-equivalence", "plasma as-is vs modified, a = 1 um, T = 300 K", Box::new(|| {
            let e1 = energy(1.0, 300.0, &pl, Prescription::AsIs, quad)?;
            let e2 = energy(1.0, 300.0, &pl, Prescription::Modified, quad)?;
            Ok(CheckOutcome::new("", "", rel(e2, e1), numeric(1e-9), BoundKind::Upper))
        })),
    ];

    use rayon::prelude::*;
    let checks: Vec<CheckOutcome> = jobs
        .par_iter()
        .map(|(name, description, job)| match job() {
            Ok(c) => CheckOutcome { name, description, ..c },
            Err(e) => CheckOutcome::failed(name, description, &e),
        })
        .collect();
    CheckReport { passed: checks.iter().all(|c| c.passed), checks }
}

/// Writes the human-readable report to `text` and the JSON report to `out`.
pub fn run_check(quad: &QuadratureSettings, out: &mut dyn Write, text: &mut dyn Write) -> Result<CheckReport> {
    let report = check_report(quad);
    text.write_all(report.render_text().as_bytes())?;
    serde_json::to_writer_pretty(&mut *out, &report)?;
    writeln!(out)?;
    if !report.passed {
        return Err(CliError::ChecksFailed { failed: report.failures() });
    }
    Ok(report)
}
