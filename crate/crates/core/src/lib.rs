//! Finite-temperature Casimir free energy, pressure and entropy between two
//! identical half-spaces from the Lifshitz formula.
//!
//! The numerical core is generic over the scalar type ([`Scalar`], implemented
//! for `f32` and `f64`). The `*F64` / `*F32` aliases below fix the width.
//!
//! ```
//! use casimir::{free_energy_plates, DielectricModelF64, PlatesConfigF64, Prescription, QuadratureSettings};
//!
//! let al = DielectricModelF64::drude(12.5, 0.063).unwrap();
//! let cfg = PlatesConfigF64::new(1.0, 300.0).unwrap();
//! let e = free_energy_plates(&cfg, &al, Prescription::Modified, &QuadratureSettings::default()).unwrap();
//! assert!(e.value < 0.0);
//! ```

pub mod asymptotics;
pub mod dielectric;
pub mod error;
pub mod lifshitz;
pub mod numdiff;
pub mod quadrature;
pub mod scalar;
pub mod units;

pub use dielectric::{
    permittivity, real_photon_reflection, reflection_pair, scattering_s11, zero_frequency_reflection,
    DielectricModel, DimlessPoint, Prescription, ReflectionPair,
};
pub use error::{CasimirError, ConvergenceFailure, Result};
pub use lifshitz::{
    entropy_plates, force_plates, force_plates_any, force_plates_zero_temperature, force_sphere_plate,
    free_energy_plates, free_energy_plates_any, free_energy_plates_zero_temperature, matsubara_xi,
    zero_frequency_derivative_term, EnergyResult, EntropyResult, MatsubaraPoint, PlatesConfig, PressureResult,
    QuadratureSettings, SpherePlateForce,
};
pub use scalar::Scalar;

pub type DielectricModelF64 = DielectricModel<f64>;
pub type DielectricModelF32 = DielectricModel<f32>;
pub type PlatesConfigF64 = PlatesConfig<f64>;
pub type PlatesConfigF32 = PlatesConfig<f32>;
pub type ReflectionPairF64 = ReflectionPair<f64>;
pub type EnergyResultF64 = EnergyResult<f64>;
pub type PressureResultF64 = PressureResult<f64>;
pub type EntropyResultF64 = EntropyResult<f64>;
pub type PlasmaAsymptoticsInputF64 = asymptotics::PlasmaAsymptoticsInput<f64>;
