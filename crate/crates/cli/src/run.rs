use std::collections::HashMap;
use std::io::Write;
use std::sync::Mutex;

use casimir::asymptotics::relative_temperature_correction;
use casimir::{
    entropy_plates, force_plates_any, force_sphere_plate, free_energy_plates_any, free_energy_plates_zero_temperature,
    CasimirError, DielectricModelF64, PlatesConfigF64, Prescription, QuadratureSettings,
};
use log::{error, info};
use rayon::prelude::*;
use serde::Serialize;

use crate::model_spec::model_id;
use crate::spec::{Format, Geometry, RunSpec};
use crate::{CliError, Result};

/// E(a, 0) per (model, a), shared across the points of one run.
#[derive(Default)]
pub struct Baselines {
    cache: Mutex<HashMap<(String, u64), f64>>,
}

impl Baselines {
    pub fn energy(&self, model: &DielectricModelF64, a_um: f64, quad: &QuadratureSettings) -> casimir::Result<f64> {
        let key = (model_id(model), a_um.to_bits());
        if let Some(e) = self.cache.lock().unwrap().get(&key) {
            return Ok(*e);
        }
        let e = free_energy_plates_zero_temperature(a_um, model, quad)?.value;
        self.cache.lock().unwrap().insert(key, e);
        Ok(e)
    }

    pub fn delta_t(
        &self,
        model: &DielectricModelF64,
        prescription: Prescription,
        a_um: f64,
        t_kelvin: f64,
        quad: &QuadratureSettings,
    ) -> casimir::Result<f64> {
        let e0 = self.energy(model, a_um, quad)?;
        let cfg = PlatesConfigF64::new(a_um, t_kelvin)?;
        let e = free_energy_plates_any(&cfg, model, prescription, quad)?.value;
        relative_temperature_correction(e, e0)
    }
}

/// One line of a sweep. Value fields are `None` when the point failed.
#[allow(non_snake_case)]
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub a_um: f64,
    pub T_K: f64,
    pub model_id: String,
    pub prescription_id: String,
    pub E_J_per_m2: Option<f64>,
    pub F_Pa: Option<f64>,
    pub delta_T: Option<f64>,
    pub est_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub F_sphere_N: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

pub const SWEEP_HEADER: [&str; 8] =
    ["a_um", "T_K", "model_id", "prescription_id", "E_J_per_m2", "F_Pa", "delta_T", "est_error"];

#[allow(non_snake_case)]
#[derive(Debug, Serialize)]
struct EvalReport {
    a_um: f64,
    T_K: f64,
    T_eff_K: f64,
    model_id: String,
    prescription_id: &'static str,
    E_J_per_m2: f64,
    E_eV_per_um2: f64,
    E_est_error: f64,
    F_Pa: f64,
    F_est_error: f64,
    terms_used: usize,
    E0_J_per_m2: f64,
    delta_T: f64,
    est_error: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    R_um: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    F_sphere_N: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    radius_warning: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    S_J_per_m2K: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    S_est_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    S_unreliable: Option<bool>,
    quad: QuadReport,
}

#[derive(Debug, Serialize)]
struct QuadReport {
    rel_tol: f64,
    matsubara_tail_tol: f64,
    max_terms: usize,
    max_subdivisions: usize,
}

impl From<&QuadratureSettings> for QuadReport {
    fn from(q: &QuadratureSettings) -> Self {
        Self {
            rel_tol: q.rel_tol,
            matsubara_tail_tol: q.matsubara_tail_tol,
            max_terms: q.max_terms,
            max_subdivisions: q.max_subdivisions,
        }
    }
}

/// Round-trippable 15-significant-digit form used in every CSV field.
pub fn fmt_num(v: f64) -> String {
    format!("{v:.14e}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_num).unwrap_or_default()
}

fn compute_row(
    spec: &RunSpec,
    model: &DielectricModelF64,
    a: f64,
    t: f64,
    baselines: &Baselines,
) -> (SweepRow, Option<CasimirError>) {
    let mut row = SweepRow {
        a_um: a,
        T_K: t,
        model_id: model_id(model),
        prescription_id: spec.prescription.id().to_string(),
        E_J_per_m2: None,
        F_Pa: None,
        delta_T: None,
        est_error: None,
        F_sphere_N: None,
        error: None,
    };
    let result = (|| -> casimir::Result<()> {
        let cfg = PlatesConfigF64::new(a, t)?;
        let e = free_energy_plates_any(&cfg, model, spec.prescription, &spec.quad)?;
        let f = force_plates_any(&cfg, model, spec.prescription, &spec.quad)?;
        let e0 = baselines.energy(model, a, &spec.quad)?;
        let sphere = match spec.geometry {
            Geometry::SpherePlate { radius_um } => {
                Some(force_sphere_plate(radius_um, &cfg, model, spec.prescription, &spec.quad)?.value)
            }
            Geometry::Plates => None,
        };
        row.E_J_per_m2 = Some(e.value);
        row.F_Pa = Some(f.value);
        row.delta_T = Some(relative_temperature_correction(e.value, e0)?);
        row.est_error = Some(e.est_error);
        row.F_sphere_N = sphere;
        Ok(())
    })();
    match result {
        Ok(()) => (row, None),
        Err(e) => {
            error!("point a = {a} um, T = {t} K failed: {e}");
            row.error = Some(e.to_string());
            (row, Some(e))
        }
    }
}

/// All sweep rows, ordered by a then T. Points are computed in parallel.
pub fn sweep_rows(spec: &RunSpec) -> Result<Vec<SweepRow>> {
    let model = spec.model_or_usage()?;
    let grid: Vec<(f64, f64)> = spec
        .a_um
        .points()
        .into_iter()
        .flat_map(|a| spec.t_kelvin.points().into_iter().map(move |t| (a, t)))
        .collect();
    let baselines = Baselines::default();
    Ok(grid.par_iter().map(|&(a, t)| compute_row(spec, &model, a, t, &baselines).0).collect())
}

pub fn write_sweep(spec: &RunSpec, rows: &[SweepRow], out: &mut dyn Write) -> Result<()> {
    let sphere = matches!(spec.geometry, Geometry::SpherePlate { .. });
    match spec.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, rows)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
            let mut header: Vec<&str> = SWEEP_HEADER.to_vec();
            if sphere {
                header.push("F_sphere_N");
            }
            w.write_record(&header)?;
            for r in rows {
                let mut rec = vec![
                    fmt_num(r.a_um),
                    fmt_num(r.T_K),
                    r.model_id.clone(),
                    r.prescription_id.clone(),
                    fmt_opt(r.E_J_per_m2),
                    fmt_opt(r.F_Pa),
                    fmt_opt(r.delta_T),
                    fmt_opt(r.est_error),
                ];
                if sphere {
                    rec.push(fmt_opt(r.F_sphere_N));
                }
                w.write_record(&rec)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

pub fn run_sweep(spec: &RunSpec, out: &mut dyn Write) -> Result<()> {
    let rows = sweep_rows(spec)?;
    write_sweep(spec, &rows, out)?;
    let failed = rows.iter().filter(|r| r.error.is_some()).count();
    info!("sweep finished: {} points, {failed} failed", rows.len());
    if failed > 0 {
        return Err(CliError::PointsFailed { failed, total: rows.len() });
    }
    Ok(())
}

pub fn run_eval(spec: &RunSpec, out: &mut dyn Write) -> Result<()> {
    let model = spec.model_or_usage()?;
    let (a, t) = (spec.a_um.points()[0], spec.t_kelvin.points()[0]);
    if spec.format == Format::Csv {
        let (row, err) = compute_row(spec, &model, a, t, &Baselines::default());
        write_sweep(spec, std::slice::from_ref(&row), out)?;
        return err.map_or(Ok(()), |e| Err(e.into()));
    }

    let report = (|| -> casimir::Result<EvalReport> {
        let cfg = PlatesConfigF64::new(a, t)?;
        let e = free_energy_plates_any(&cfg, &model, spec.prescription, &spec.quad)?;
        let f = force_plates_any(&cfg, &model, spec.prescription, &spec.quad)?;
        let e0 = free_energy_plates_zero_temperature(a, &model, &spec.quad)?.value;
        let (radius, sphere, warning) = match spec.geometry {
            Geometry::SpherePlate { radius_um } => {
                let s = force_sphere_plate(radius_um, &cfg, &model, spec.prescription, &spec.quad)?;
                (Some(radius_um), Some(s.value), Some(s.radius_warning))
            }
            Geometry::Plates => (None, None, None),
        };
        let entropy = if spec.entropy && t > 0.0 {
            Some(entropy_plates(&cfg, &model, spec.prescription, &spec.quad)?)
        } else {
            None
        };
        Ok(EvalReport {
            a_um: a,
            T_K: t,
            T_eff_K: cfg.effective_temperature(),
            model_id: model_id(&model),
            prescription_id: spec.prescription.id(),
            E_J_per_m2: e.value,
            E_eV_per_um2: e.ev_per_um2(),
            E_est_error: e.est_error,
            F_Pa: f.value,
            F_est_error: f.est_error,
            terms_used: e.terms_used,
            E0_J_per_m2: e0,
            delta_T: relative_temperature_correction(e.value, e0)?,
            est_error: e.est_error,
            R_um: radius,
            F_sphere_N: sphere,
            radius_warning: warning,
            S_J_per_m2K: entropy.map(|s| s.value),
            S_est_error: entropy.map(|s| s.est_error),
            S_unreliable: entropy.map(|s| s.unreliable),
            quad: (&spec.quad).into(),
        })
    })();
    match report {
        Ok(r) => {
            serde_json::to_writer_pretty(&mut *out, &r)?;
            writeln!(out)?;
            Ok(())
        }
        Err(CasimirError::Convergence(f)) => {
            let diag = serde_json::json!({
                "error": "convergence",
                "reason": f.reason,
                "partial_value": f.partial_value,
                "est_error": f.est_error,
                "terms_used": f.terms_used,
            });
            serde_json::to_writer_pretty(&mut *out, &diag)?;
            writeln!(out)?;
            Err(CliError::Convergence(f))
        }
        Err(e) => Err(e.into()),
    }
}

/// Relative temperature corrections of the three reference configurations at one gap.
#[allow(non_snake_case)]
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fig1Row {
    pub a_um: f64,
    pub delta_T_drude_modified: Option<f64>,
    pub delta_T_drude_asis: Option<f64>,
    pub delta_T_dielectric_eps7: Option<f64>,
}

pub const FIG1_HEADER: [&str; 4] = ["a_um", "delta_T_drude_modified", "delta_T_drude_asis", "delta_T_dielectric_eps7"];

pub fn fig1_rows(spec: &RunSpec) -> Result<Vec<Fig1Row>> {
    let t = spec.t_kelvin.points()[0];
    let al = DielectricModelF64::drude(12.5, 0.063)?;
    let glass = DielectricModelF64::constant_dielectric(7.0)?;
    let baselines = Baselines::default();
    let q = &spec.quad;
    let cell = |m: &DielectricModelF64, p: Prescription, a: f64| match baselines.delta_t(m, p, a, t, q) {
        Ok(v) => Some(v),
        Err(e) => {
            error!("{} / {} at a = {a} um failed: {e}", model_id(m), p.id());
            None
        }
    };
    Ok(spec
        .a_um
        .points()
        .par_iter()
        .map(|&a| Fig1Row {
            a_um: a,
            delta_T_drude_modified: cell(&al, Prescription::Modified, a),
            delta_T_drude_asis: cell(&al, Prescription::AsIs, a),
            delta_T_dielectric_eps7: cell(&glass, Prescription::AsIs, a),
        })
        .collect())
}

pub fn run_fig1(spec: &RunSpec, out: &mut dyn Write) -> Result<()> {
    let rows = fig1_rows(spec)?;
    match spec.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &rows)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(&mut *out);
            w.write_record(FIG1_HEADER)?;
            for r in &rows {
                w.write_record([
                    fmt_num(r.a_um),
                    fmt_opt(r.delta_T_drude_modified),
                    fmt_opt(r.delta_T_drude_asis),
                    fmt_opt(r.delta_T_dielectric_eps7),
                ])?;
            }
            w.flush()?;
        }
    }
    let failed = rows
        .iter()
        .filter(|r| r.delta_T_drude_modified.is_none() || r.delta_T_drude_asis.is_none() || r.delta_T_dielectric_eps7.is_none())
        .count();
    if failed > 0 {
        return Err(CliError::PointsFailed { failed, total: rows.len() });
    }
    Ok(())
}
