//! Physical constants and unit conversions.
//!
//! Computations run in eV, µm and K. Model parameters are photon energies
//! ħω in eV; gaps and radii are in µm; temperatures in K. Results are
//! converted to SI only at the public boundary.

/// ħc in eV·µm.
pub const HBAR_C_EV_UM: f64 = 0.197_326_980_4;

/// Boltzmann constant in eV/K.
pub const K_B_EV_PER_K: f64 = 8.617_333_262e-5;

/// Elementary charge in C (exact, SI 2019), i.e. J per eV.
pub const JOULE_PER_EV: f64 = 1.602_176_634e-19;

/// 1 eV/µm² expressed in J/m².
pub const J_PER_M2_PER_EV_PER_UM2: f64 = JOULE_PER_EV * 1.0e12;

/// 1 eV/µm³ expressed in Pa.
pub const PA_PER_EV_PER_UM3: f64 = JOULE_PER_EV * 1.0e18;

/// 1 eV/µm expressed in N.
pub const N_PER_EV_PER_UM: f64 = JOULE_PER_EV * 1.0e6;

/// Apéry's constant ζ(3).
pub const ZETA_3: f64 = 1.202_056_903_159_594_3;

/// Effective temperature of a gap, k_B T_eff = ħc/(2a), in K.
pub fn effective_temperature(a_um: f64) -> f64 {
    HBAR_C_EV_UM / (2.0 * a_um * K_B_EV_PER_K)
}

/// Penetration depth δ₀ = c/ω_p in µm for ħω_p in eV.
pub fn penetration_depth_um(omega_p_ev: f64) -> f64 {
    HBAR_C_EV_UM / omega_p_ev
}

/// Converts a photon energy ħξ (eV) to the dimensionless frequency x = 2aξ/c.
pub fn dimensionless_frequency(hbar_xi_ev: f64, a_um: f64) -> f64 {
    2.0 * a_um * hbar_xi_ev / HBAR_C_EV_UM
}
