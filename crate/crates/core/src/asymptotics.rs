//! Closed-form low- and high-temperature asymptotics for plasma-model plates
//! and the relative thermal correction.
//!
//! With t = T/T_eff (k_B T_eff = ħc/(2a)) and δ₀ = c/ω_p:
//!
//! ```text
//! E ≈ −π²ħc/(720a³) {1 + (45ζ(3)/π³)t³ − t⁴ − 4(δ₀/a)[1 − (45ζ(3)/(2π³))t³ + t⁴]}      t ≪ 1
//! F ≈ −π²ħc/(240a⁴) {1 + t⁴/3 − (16/3)(δ₀/a)[1 − (45ζ(3)/(8π³))t³]}                 t ≪ 1
//! E ≈ −k_BT ζ(3)/(8πa²) (1 − 2δ₀/a),   F ≈ −k_BT ζ(3)/(4πa³) (1 − 3δ₀/a)             t ≫ 1
//! ```
//!
//! Outside the validity windows of [`PlasmaAsymptoticsInput`] the functions refuse.

use crate::error::{CasimirError, Result};
use crate::scalar::Scalar;
use crate::units::{HBAR_C_EV_UM, J_PER_M2_PER_EV_PER_UM2, K_B_EV_PER_K, PA_PER_EV_PER_UM3, ZETA_3};

/// Low-T formulas require δ₀/a below this.
pub const LOW_T_MAX_DELTA_OVER_A: f64 = 0.25;
/// Low-T formulas require t below this.
pub const LOW_T_MAX_REDUCED_T: f64 = 0.5;
/// High-T formulas require t above this.
pub const HIGH_T_MIN_REDUCED_T: f64 = 2.0;

/// Gap (µm), temperature (K) and ħω_p (eV) of a plasma-model configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlasmaAsymptoticsInput<T = f64> {
    pub a_um: T,
    pub t_kelvin: T,
    pub omega_p_ev: T,
}

impl<T: Scalar> PlasmaAsymptoticsInput<T> {
    pub fn new(a_um: T, t_kelvin: T, omega_p_ev: T) -> Result<Self> {
        if !(a_um > T::zero() && a_um.is_finite()) {
            return Err(CasimirError::domain(format!("a must be positive (got {a_um})")));
        }
        if !(t_kelvin >= T::zero() && t_kelvin.is_finite()) {
            return Err(CasimirError::domain(format!("T must be >= 0 (got {t_kelvin})")));
        }
        if !(omega_p_ev > T::zero()) {
            return Err(CasimirError::domain(format!("omega_p must be > 0 (got {omega_p_ev})")));
        }
        Ok(Self { a_um, t_kelvin, omega_p_ev })
    }

    /// δ₀ = c/ω_p in µm; zero for an infinite plasma frequency.
    pub fn delta0_um(&self) -> T {
        T::lit(HBAR_C_EV_UM) / self.omega_p_ev
    }

    pub fn delta_over_a(&self) -> T {
        self.delta0_um() / self.a_um
    }

    pub fn effective_temperature(&self) -> T {
        effective_temperature(self.a_um)
    }

    /// t = T/T_eff.
    pub fn reduced_temperature(&self) -> T {
        self.t_kelvin / self.effective_temperature()
    }

    fn check_low_t(&self) -> Result<()> {
        let d = self.delta_over_a();
        if !(d < T::lit(LOW_T_MAX_DELTA_OVER_A)) {
            return Err(CasimirError::domain(format!(
                "low-temperature asymptotics need delta0/a < {LOW_T_MAX_DELTA_OVER_A} (got {d})"
            )));
        }
        let t = self.reduced_temperature();
        if !(t < T::lit(LOW_T_MAX_REDUCED_T)) {
            return Err(CasimirError::domain(format!(
                "low-temperature asymptotics need T/T_eff < {LOW_T_MAX_REDUCED_T} (got {t})"
            )));
        }
        Ok(())
    }

    fn check_high_t(&self) -> Result<()> {
        let t = self.reduced_temperature();
        if !(t > T::lit(HIGH_T_MIN_REDUCED_T)) {
            return Err(CasimirError::domain(format!(
                "high-temperature asymptotics need T/T_eff > {HIGH_T_MIN_REDUCED_T} (got {t})"
            )));
        }
        Ok(())
    }
}

/// T_eff in K for a gap of `a_um`.
pub fn effective_temperature<T: Scalar>(a_um: T) -> T {
    T::lit(HBAR_C_EV_UM / (2.0 * K_B_EV_PER_K)) / a_um
}

/// −π²ħc/(720a³) in J/m².
pub fn ideal_energy_zero_temperature<T: Scalar>(a_um: T) -> T {
    -T::PI() * T::PI() * T::lit(HBAR_C_EV_UM * J_PER_M2_PER_EV_PER_UM2) / (T::lit(720.0) * a_um.powi(3))
}

/// −π²ħc/(240a⁴) in Pa.
pub fn ideal_pressure_zero_temperature<T: Scalar>(a_um: T) -> T {
    -T::PI() * T::PI() * T::lit(HBAR_C_EV_UM * PA_PER_EV_PER_UM3) / (T::lit(240.0) * a_um.powi(4))
}

/// −k_BT ζ(3)/(8πa²) in J/m², the high-temperature perfect-conductor free energy.
pub fn ideal_energy_high_temperature<T: Scalar>(a_um: T, t_kelvin: T) -> T {
    -T::lit(K_B_EV_PER_K * ZETA_3 * J_PER_M2_PER_EV_PER_UM2) * t_kelvin / (T::lit(8.0) * T::PI() * a_um * a_um)
}

/// −k_BT ζ(3)/(4πa³) in Pa.
pub fn ideal_pressure_high_temperature<T: Scalar>(a_um: T, t_kelvin: T) -> T {
    -T::lit(K_B_EV_PER_K * ZETA_3 * PA_PER_EV_PER_UM3) * t_kelvin / (T::lit(4.0) * T::PI() * a_um.powi(3))
}

fn zeta3_over_pi3<T: Scalar>() -> T {
    T::lit(ZETA_3) / T::PI().powi(3)
}

/// Low-temperature free energy per unit area (J/m²).
pub fn low_t_energy_plasma<T: Scalar>(inp: &PlasmaAsymptoticsInput<T>) -> Result<T> {
    inp.check_low_t()?;
    let t = inp.reduced_temperature();
    let d = inp.delta_over_a();
    let c3 = T::lit(45.0) * zeta3_over_pi3::<T>();
    let t3 = t.powi(3);
    let t4 = t.powi(4);
    let brace = T::one() + c3 * t3 - t4 - T::lit(4.0) * d * (T::one() - c3 / T::lit(2.0) * t3 + t4);
    Ok(ideal_energy_zero_temperature(inp.a_um) * brace)
}

/// Low-temperature pressure (Pa).
pub fn low_t_force_plasma<T: Scalar>(inp: &PlasmaAsymptoticsInput<T>) -> Result<T> {
    inp.check_low_t()?;
    let t = inp.reduced_temperature();
    let d = inp.delta_over_a();
    let c3 = T::lit(45.0) * zeta3_over_pi3::<T>() / T::lit(8.0);
    let three = T::lit(3.0);
    let brace = T::one() + t.powi(4) / three - T::lit(16.0) / three * d * (T::one() - c3 * t.powi(3));
    Ok(ideal_pressure_zero_temperature(inp.a_um) * brace)
}

/// High-temperature (free energy J/m², pressure Pa).
pub fn high_t_limits_plasma<T: Scalar>(inp: &PlasmaAsymptoticsInput<T>) -> Result<(T, T)> {
    inp.check_high_t()?;
    let d = inp.delta_over_a();
    let e = ideal_energy_high_temperature(inp.a_um, inp.t_kelvin) * (T::one() - T::lit(2.0) * d);
    let f = ideal_pressure_high_temperature(inp.a_um, inp.t_kelvin) * (T::one() - T::lit(3.0) * d);
    Ok((e, f))
}

/// δ_T = (E(a, T) − E(a, 0))/E(a, 0). Equal to the relative thermal
/// correction of the sphere–plate force, which is linear in E.
pub fn relative_temperature_correction<T: Scalar>(e_at_t: T, e_at_0: T) -> Result<T> {
    if e_at_0 == T::zero() || !e_at_0.is_finite() {
        return Err(CasimirError::domain("relative temperature correction needs E(a, 0) != 0"));
    }
    Ok((e_at_t - e_at_0) / e_at_0)
}
