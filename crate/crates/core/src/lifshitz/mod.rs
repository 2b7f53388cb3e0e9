//! Free energy, pressure and entropy of two identical half-spaces from the
//! Lifshitz formula, plus the sphere–plate force in the proximity force
//! approximation.
//!
//! At T > 0 the free energy per unit area is
//!
//! ```text
//! E(a, T) = k_B T/(16π a²) Σ_{l=-∞}^{∞} ∫_{x_l}^∞ y dy Σ_pol ln(1 − r²(x_l, y) e^{−y})
//! ```
//!
//! summed as the l = 0 term plus twice the l ≥ 1 terms, with x_l = 2π l T/T_eff.
//! The l = 0 coefficients come from the chosen [`Prescription`]. The pressure
//! is `−∂E/∂a`, evaluated in closed form under the integral. At T = 0 the sum
//! becomes an integral over x and has its own entry points.

mod engine;

use log::warn;

use crate::dielectric::DielectricModel;
pub use crate::dielectric::Prescription;
use crate::error::{CasimirError, Result};
use crate::numdiff::richardson_central;
use crate::scalar::Scalar;
use crate::units::{
    HBAR_C_EV_UM, J_PER_M2_PER_EV_PER_UM2, K_B_EV_PER_K, N_PER_EV_PER_UM,
    PA_PER_EV_PER_UM3,
};
use engine::{matsubara_sum, te_diagonal_derivative_term, zero_temperature_integral, Quantity};

/// ħ in eV·s.
const HBAR_EV_S: f64 = 6.582_119_569e-16;

/// Gap width (µm) and temperature (K).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlatesConfig<T = f64> {
    pub a_um: T,
    pub t_kelvin: T,
}

impl<T: Scalar> PlatesConfig<T> {
    pub fn new(a_um: T, t_kelvin: T) -> Result<Self> {
        let cfg = Self { a_um, t_kelvin };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a_um.is_finite() && self.a_um > T::zero()) {
            return Err(CasimirError::domain(format!("a must be positive (got {})", self.a_um)));
        }
        if !(self.t_kelvin.is_finite() && self.t_kelvin >= T::zero()) {
            return Err(CasimirError::domain(format!("T must be >= 0 (got {})", self.t_kelvin)));
        }
        Ok(())
    }

    /// T_eff with k_B T_eff = ħc/(2a), in K.
    pub fn effective_temperature(&self) -> T {
        T::lit(HBAR_C_EV_UM) / (T::lit(2.0 * K_B_EV_PER_K) * self.a_um)
    }

    /// T/T_eff.
    pub fn reduced_temperature(&self) -> T {
        self.t_kelvin / self.effective_temperature()
    }

    fn require_positive_temperature(&self) -> Result<()> {
        self.validate()?;
        if self.t_kelvin > T::zero() {
            Ok(())
        } else {
            Err(CasimirError::domain(
                "T must be > 0 for the Matsubara sum; use the zero-temperature routines at T = 0",
            ))
        }
    }
}

/// Truncation and tolerance policy for the Matsubara sum and the y integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSettings {
    /// Relative tolerance of each y integral (and of the x integral at T = 0).
    pub rel_tol: f64,
    /// The sum stops once the last term and the geometric tail estimate both
    /// fall below this fraction of the accumulated total.
    pub matsubara_tail_tol: f64,
    pub max_terms: usize,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            matsubara_tail_tol: 1e-10,
            max_terms: 1_000_000,
            max_subdivisions: 200,
        }
    }
}

impl QuadratureSettings {
    pub fn validate(&self) -> Result<()> {
        let in_unit = |v: f64| v > 0.0 && v < 1.0;
        if !in_unit(self.rel_tol) || !in_unit(self.matsubara_tail_tol) {
            return Err(CasimirError::domain("tolerances must lie in (0, 1)"));
        }
        if self.max_terms == 0 || self.max_subdivisions == 0 {
            return Err(CasimirError::domain("max_terms and max_subdivisions must be positive"));
        }
        Ok(())
    }

    /// Settings tight enough that free energies at neighbouring temperatures
    /// can be differenced.
    pub fn for_differencing(&self) -> Self {
        Self {
            rel_tol: self.rel_tol.min(1e-13),
            matsubara_tail_tol: self.matsubara_tail_tol.min(1e-16),
            ..*self
        }
    }
}

/// Free energy per unit area.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyResult<T = f64> {
    /// J/m².
    pub value: T,
    /// J/m², bounds quadrature error and the truncated Matsubara tail.
    pub est_error: T,
    /// Matsubara terms summed (x-integrand evaluations at T = 0).
    pub terms_used: usize,
}

impl<T: Scalar> EnergyResult<T> {
    pub fn ev_per_um2(&self) -> T {
        self.value / T::lit(J_PER_M2_PER_EV_PER_UM2)
    }
}

/// Force per unit area; negative values are attractive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PressureResult<T = f64> {
    /// Pa.
    pub value: T,
    /// Pa.
    pub est_error: T,
    pub terms_used: usize,
}

/// Sphere–plate force from the proximity force approximation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePlateForce<T = f64> {
    /// N.
    pub value: T,
    /// N.
    pub est_error: T,
    /// Set when R < 100·a, outside the regime where the approximation holds.
    pub radius_warning: bool,
}

/// Entropy per unit area, S = −∂E/∂T.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyResult<T = f64> {
    /// J/(m²·K).
    pub value: T,
    /// J/(m²·K): Richardson correction plus propagated free-energy errors.
    pub est_error: T,
    /// Temperature step of the coarse central difference, K.
    pub step_kelvin: T,
    /// Set when the finite-difference error exceeds |S|/10.
    pub unreliable: bool,
}

/// Matsubara frequency ħξ_l (eV).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatsubaraPoint<T = f64> {
    pub l: usize,
    pub hbar_xi_ev: T,
}

impl<T: Scalar> MatsubaraPoint<T> {
    pub fn rad_per_s(&self) -> T {
        self.hbar_xi_ev / T::lit(HBAR_EV_S)
    }

    /// x_l = 2aξ_l/c for a gap of `a_um`.
    pub fn dimensionless(&self, a_um: T) -> T {
        T::lit(2.0) * a_um * self.hbar_xi_ev / T::lit(HBAR_C_EV_UM)
    }
}

/// ħξ_l = 2π l k_B T.
pub fn matsubara_xi<T: Scalar>(l: usize, t_kelvin: T) -> Result<MatsubaraPoint<T>> {
    if !(t_kelvin > T::zero() && t_kelvin.is_finite()) {
        return Err(CasimirError::domain(
            "T must be > 0 for Matsubara frequencies; use the zero-temperature routines at T = 0",
        ));
    }
    let hbar_xi_ev = T::lit(2.0) * T::PI() * T::from_count(l) * T::lit(K_B_EV_PER_K) * t_kelvin;
    Ok(MatsubaraPoint { l, hbar_xi_ev })
}

fn energy_prefactor<T: Scalar>(cfg: &PlatesConfig<T>) -> T {
    // k_B T/(16π a²) in eV/µm², converted to J/m².
    T::lit(K_B_EV_PER_K * J_PER_M2_PER_EV_PER_UM2) * cfg.t_kelvin
        / (T::lit(16.0) * T::PI() * cfg.a_um * cfg.a_um)
}

fn pressure_prefactor<T: Scalar>(cfg: &PlatesConfig<T>) -> T {
    // −k_B T/(16π a³) in eV/µm³, converted to Pa.
    -T::lit(K_B_EV_PER_K * PA_PER_EV_PER_UM3) * cfg.t_kelvin / (T::lit(16.0) * T::PI() * cfg.a_um.powi(3))
}

/// Free energy per unit area between two plates at T > 0.
pub fn free_energy_plates<T: Scalar>(
    cfg: &PlatesConfig<T>,
    model: &DielectricModel<T>,
    prescription: Prescription,
    quad: &QuadratureSettings,
) -> Result<EnergyResult<T>> {
    cfg.require_positive_temperature()?;
    model.validate()?;
    quad.validate()?;
    let pre = energy_prefactor(cfg);
    let scaled = model.scaled(cfg.a_um);
    let s = matsubara_sum(Quantity::Energy, &scaled, prescription, cfg.reduced_temperature(), quad)
        .map_err(|e| rescale_failure(e, pre))?;
    Ok(EnergyResult {
        value: pre * s.total,
        est_error: pre.abs() * s.error,
        terms_used: s.terms,
    })
}

/// Pressure between two plates at T > 0, the analytic −∂E/∂a.
pub fn force_plates<T: Scalar>(
    cfg: &PlatesConfig<T>,
    model: &DielectricModel<T>,
    prescription: Prescription,
    quad: &QuadratureSettings,
) -> Result<PressureResult<T>> {
    cfg.require_positive_temperature()?;
    model.validate()?;
    quad.validate()?;
    let pre = pressure_prefactor(cfg);
    let scaled = model.scaled(cfg.a_um);
    let s = matsubara_sum(Quantity::Force, &scaled, prescription, cfg.reduced_temperature(), quad)
        .map_err(|e| rescale_failure(e, pre))?;
    Ok(PressureResult {
        value: pre * s.total,
        est_error: pre.abs() * s.error,
        terms_used: s.terms,
    })
}

fn check_gap<T: Scalar>(a_um: T) -> Result<()> {
    if a_um.is_finite() && a_um > T::zero() {
        Ok(())
    } else {
        Err(CasimirError::domain(format!("a must be positive (got {a_um})")))
    }
}

/// Free energy per unit area at T = 0 from the continuous-frequency integral.
pub fn free_energy_plates_zero_temperature<T: Scalar>(
    a_um: T,
    model: &DielectricModel<T>,
    quad: &QuadratureSettings,
) -> Result<EnergyResult<T>> {
    check_gap(a_um)?;
    model.validate()?;
    quad.validate()?;
    // ħc/(32π² a³) in eV/µm², converted to J/m².
    let pre = T::lit(HBAR_C_EV_UM * J_PER_M2_PER_EV_PER_UM2) / (T::lit(32.0) * T::PI() * T::PI() * a_um.powi(3));
    let s = zero_temperature_integral(Quantity::Energy, &model.scaled(a_um), quad).map_err(|e| rescale_failure(e, pre))?;
    Ok(EnergyResult {
        value: pre * s.total,
        est_error: pre.abs() * s.error,
        terms_used: s.terms,
    })
}

/// Pressure between two plates at T = 0.
pub fn force_plates_zero_temperature<T: Scalar>(
    a_um: T,
    model: &DielectricModel<T>,
    quad: &QuadratureSettings,
) -> Result<PressureResult<T>> {
    check_gap(a_um)?;
    model.validate()?;
    quad.validate()?;
    // −ħc/(32π² a⁴) in eV/µm³, converted to Pa.
    let pre = -T::lit(HBAR_C_EV_UM * PA_PER_EV_PER_UM3) / (T::lit(32.0) * T::PI() * T::PI() * a_um.powi(4));
    let s = zero_temperature_integral(Quantity::Force, &model.scaled(a_um), quad).map_err(|e| rescale_failure(e, pre))?;
    Ok(PressureResult {
        value: pre * s.total,
        est_error: pre.abs() * s.error,
        terms_used: s.terms,
    })
}

/// Free energy at any T ≥ 0, dispatching T = 0 to the integral route.
pub fn free_energy_plates_any<T: Scalar>(
    cfg: &PlatesConfig<T>,
    model: &DielectricModel<T>,
    prescription: Prescription,
    quad: &QuadratureSettings,
) -> Result<EnergyResult<T>> {
    cfg.validate()?;
    if cfg.t_kelvin == T::zero() {
        free_energy_plates_zero_temperature(cfg.a_um, model, quad)
    } else {
        free_energy_plates(cfg, model, prescription, quad)
    }
}

/// Pressure at any T ≥ 0, dispatching T = 0 to the integral route.
pub fn force_plates_any<T: Scalar>(
    cfg: &PlatesConfig<T>,
    model: &DielectricModel<T>,
    prescription: Prescription,
    quad: &QuadratureSettings,
) -> Result<PressureResult<T>> {
    cfg.validate()?;
    if cfg.t_kelvin == T::zero() {
        force_plates_zero_temperature(cfg.a_um, model, quad)
    } else {
        force_plates(cfg, model, prescription, quad)
    }
}

/// F = 2πR·E(a) for a sphere of radius `radius_um` above a plate.
pub fn force_sphere_plate<T: Scalar>(
    radius_um: T,
    cfg: &PlatesConfig<T>,
    model: &DielectricModel<T>,
    prescription: Prescription,
    quad: &QuadratureSettings,
) -> Result<SpherePlateForce<T>> {
    if !(radius_um.is_finite() && radius_um > T::zero()) {
        return Err(CasimirError::domain(format!("R must be positive (got {radius_um})")));
    }
    let radius_warning = radius_um < T::lit(100.0) * cfg.a_um;
    if radius_warning {
        warn!(
            "sphere radius {radius_um} um is below 100 a = {} um; proximity force approximation may be poor",
            T::lit(100.0) * cfg.a_um
        );
    }
    let e = free_energy_plates_any(cfg, model, prescription, quad)?;
    // J/m² · µm → N: 1 J/m² × 1 µm = 1e-6 N.
    let scale = T::lit(2.0) * T::PI() * radius_um * T::lit(N_PER_EV_PER_UM / J_PER_M2_PER_EV_PER_UM2);
    Ok(SpherePlateForce {
        value: scale * e.value,
        est_error: scale * e.est_error,
        radius_warning,
    })
}

/// S = −∂E/∂T by central differences with one Richardson step.
///
/// The coarse step is max(0.01 T, 0.5 K), capped at T/2 so that T − h > 0.
/// Free energies are evaluated with [`QuadratureSettings::for_differencing`].
pub fn entropy_plates<T: Scalar>(
    cfg: &PlatesConfig<T>,
    model: &DielectricModel<T>,
    prescription: Prescription,
    quad: &QuadratureSettings,
) -> Result<EntropyResult<T>> {
    cfg.require_positive_temperature()?;
    let t = cfg.t_kelvin;
    let h = (T::lit(0.01) * t).max(T::lit(0.5)).min(T::lit(0.5) * t);
    let tight = quad.for_differencing();
    let worst_err = std::cell::Cell::new(T::zero());
    let energy = |temp: T| -> Result<T> {
        let c = PlatesConfig { a_um: cfg.a_um, t_kelvin: temp };
        let e = free_energy_plates(&c, model, prescription, &tight)?;
        worst_err.set(worst_err.get().max(e.est_error));
        Ok(e.value)
    };
    let d = richardson_central(energy, t, h)?;
    let value = -d.value;
    // (4·D(h/2) − D(h))/3 turns an error `err` in each E into at most 3·err/h.
    let propagated = T::lit(3.0) * worst_err.get() / h;
    let unreliable = d.error > value.abs() / T::lit(10.0);
    if unreliable {
        warn!(
            "entropy finite-difference error {} exceeds |S|/10 at a = {} um, T = {} K",
            d.error, cfg.a_um, t
        );
    }
    Ok(EntropyResult {
        value,
        est_error: d.error + propagated,
        step_kelvin: h,
        unreliable,
    })
}

/// Free-energy contribution of the subtracted x-derivative TE term of the
/// zero-frequency integrand, `−k_BT/(16πa²) ∫ y dy ∫_0^y ∂_x ln(1 − r₂²(x, y)e^{−y}) dx`.
///
/// Identically zero for the plasma model; for Drude it tends to a finite
/// value as γ → 0⁺ although it vanishes at γ = 0. Diagnostic only.
pub fn zero_frequency_derivative_term<T: Scalar>(
    cfg: &PlatesConfig<T>,
    model: &DielectricModel<T>,
    quad: &QuadratureSettings,
) -> Result<EnergyResult<T>> {
    cfg.require_positive_temperature()?;
    model.validate()?;
    let pre = energy_prefactor(cfg);
    let d = te_diagonal_derivative_term(&model.scaled(cfg.a_um), quad)?;
    Ok(EnergyResult {
        value: -pre * d.value,
        est_error: pre.abs() * d.error,
        terms_used: 1,
    })
}

fn rescale_failure<T: Scalar>(e: CasimirError, pre: T) -> CasimirError {
    match e {
        CasimirError::Convergence(mut f) => {
            f.partial_value *= pre.as_f64();
            f.est_error *= pre.abs().as_f64();
            CasimirError::Convergence(f)
        }
        other => other,
    }
}
