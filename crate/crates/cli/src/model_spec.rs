//! `ideal`, `plasma:<omega_p_eV>`, `drude:<omega_p_eV>,<gamma_eV>`, `dielectric:<eps0>`.

use casimir::{DielectricModelF64, Prescription};

use crate::{CliError, Result};

pub fn parse_model(s: &str) -> Result<DielectricModelF64> {
    let s = s.trim();
    let (kind, params) = s.split_once(':').unwrap_or((s, ""));
    let nums: Vec<f64> = if params.is_empty() {
        Vec::new()
    } else {
        params
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<f64>()
                    .map_err(|_| CliError::Usage(format!("invalid number '{p}' in model '{s}'")))
            })
            .collect::<Result<_>>()?
    };
    let model = match (kind.to_ascii_lowercase().as_str(), nums.as_slice()) {
        ("ideal", []) => DielectricModelF64::IdealMetal,
        ("plasma", [w]) => DielectricModelF64::plasma(*w)?,
        ("drude", [w, g]) => DielectricModelF64::drude(*w, *g)?,
        ("dielectric", [e]) => DielectricModelF64::constant_dielectric(*e)?,
        _ => {
            return Err(CliError::Usage(format!(
                "invalid model '{s}'; expected ideal, plasma:W, drude:W,G or dielectric:EPS"
            )))
        }
    };
    Ok(model)
}

/// Canonical spelling of a model; parses back to the same model.
pub fn model_id(m: &DielectricModelF64) -> String {
    match *m {
        DielectricModelF64::IdealMetal => "ideal".into(),
        DielectricModelF64::Plasma { omega_p } => format!("plasma:{omega_p}"),
        DielectricModelF64::Drude { omega_p, gamma } => format!("drude:{omega_p},{gamma}"),
        DielectricModelF64::ConstantDielectric { eps0 } => format!("dielectric:{eps0}"),
    }
}

pub fn parse_prescription(s: &str) -> Result<Prescription> {
    match s.trim().to_ascii_lowercase().as_str() {
        "as-is" | "asis" => Ok(Prescription::AsIs),
        "ideal-metal-sdm" | "sdm" | "perfect-conductor" => Ok(Prescription::PerfectConductor),
        "modified" => Ok(Prescription::Modified),
        _ => Err(CliError::Usage(format!(
            "invalid prescription '{s}'; expected as-is, ideal-metal-sdm or modified"
        ))),
    }
}
