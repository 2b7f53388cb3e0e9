//! Dielectric response on the imaginary frequency axis and the reflection
//! coefficients built from it.
//!
//! Frequencies are photon energies ħξ in eV and gaps are in µm. Inside the
//! Lifshitz integrands everything is expressed through the dimensionless pair
//!
//! ```text
//! x = 2aξ/c,   y = 2aq = 2a·sqrt(ξ²/c² + k⊥²),   y ≥ x ≥ 0
//! ```
//!
//! in which the plasma frequency becomes `w = 2aω_p/c` and the relaxation
//! frequency `g = 2aγ/c`.

use crate::error::{CasimirError, Result};
use crate::scalar::Scalar;
use crate::units::HBAR_C_EV_UM;

/// Frequency-dependent permittivity model, parameters as photon energies in eV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DielectricModel<T = f64> {
    /// Perfect conductor, ε = ∞ at every frequency.
    IdealMetal,
    /// ε(iξ) = 1 + ω_p²/ξ².
    Plasma { omega_p: T },
    /// ε(iξ) = 1 + ω_p²/(ξ(ξ + γ)).
    Drude { omega_p: T, gamma: T },
    /// ε(iξ) = ε₀.
    ConstantDielectric { eps0: T },
}

impl<T: Scalar> DielectricModel<T> {
    pub fn plasma(omega_p: T) -> Result<Self> {
        let m = Self::Plasma { omega_p };
        m.validate()?;
        Ok(m)
    }

    pub fn drude(omega_p: T, gamma: T) -> Result<Self> {
        let m = Self::Drude { omega_p, gamma };
        m.validate()?;
        Ok(m)
    }

    pub fn constant_dielectric(eps0: T) -> Result<Self> {
        let m = Self::ConstantDielectric { eps0 };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::IdealMetal => Ok(()),
            Self::Plasma { omega_p } => check_omega_p(omega_p),
            Self::Drude { omega_p, gamma } => {
                check_omega_p(omega_p)?;
                if gamma.is_finite() && gamma >= T::zero() {
                    Ok(())
                } else {
                    Err(CasimirError::domain(format!("gamma must be >= 0 (got {gamma})")))
                }
            }
            Self::ConstantDielectric { eps0 } => {
                if eps0.is_finite() && eps0 >= T::one() {
                    Ok(())
                } else {
                    Err(CasimirError::domain(format!("eps0 must be >= 1 (got {eps0})")))
                }
            }
        }
    }

    /// True for models whose zero-frequency TE reflection depends on the
    /// prescription (Drude with γ > 0).
    pub fn is_dissipative(&self) -> bool {
        matches!(*self, Self::Drude { gamma, .. } if gamma > T::zero())
    }

    /// Plasma frequency, if the model has one.
    pub fn omega_p(&self) -> Option<T> {
        match *self {
            Self::Plasma { omega_p } | Self::Drude { omega_p, .. } => Some(omega_p),
            _ => None,
        }
    }

    /// The model in the dimensionless variables of a gap of width `a_um`.
    pub(crate) fn scaled(&self, a_um: T) -> ScaledModel<T> {
        let s = T::lit(2.0) * a_um / T::lit(HBAR_C_EV_UM);
        match *self {
            Self::IdealMetal => ScaledModel::Ideal,
            Self::Plasma { omega_p } => ScaledModel::Plasma { w2: (s * omega_p).powi(2) },
            // γ = 0 is the plasma model; keep it on that path.
            Self::Drude { omega_p, gamma } if gamma == T::zero() => {
                ScaledModel::Plasma { w2: (s * omega_p).powi(2) }
            }
            Self::Drude { omega_p, gamma } => ScaledModel::Drude {
                w2: (s * omega_p).powi(2),
                g: s * gamma,
            },
            Self::ConstantDielectric { eps0 } => ScaledModel::Dielectric { eps0 },
        }
    }
}

fn check_omega_p<T: Scalar>(omega_p: T) -> Result<()> {
    if omega_p.is_finite() && omega_p > T::zero() {
        Ok(())
    } else {
        Err(CasimirError::domain(format!("omega_p must be > 0 (got {omega_p})")))
    }
}

fn check_gap<T: Scalar>(a_um: T) -> Result<()> {
    if a_um.is_finite() && a_um > T::zero() {
        Ok(())
    } else {
        Err(CasimirError::domain(format!("a must be positive (got {a_um})")))
    }
}

/// Rule fixing the zero-frequency (l = 0) reflection coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Prescription {
    /// Direct ξ → 0 limit of the Fresnel coefficients of the model.
    AsIs,
    /// Both coefficients set to their perfect-conductor value 1.
    PerfectConductor,
    /// TM coefficient 1, TE coefficient taken on the light-cone diagonal
    /// x = y of the dimensionless Fresnel coefficient. Coincides with
    /// [`Prescription::AsIs`] for every non-dissipative model.
    Modified,
}

impl Prescription {
    pub const ALL: [Prescription; 3] = [Self::AsIs, Self::PerfectConductor, Self::Modified];

    pub fn id(&self) -> &'static str {
        match self {
            Self::AsIs => "as-is",
            Self::PerfectConductor => "ideal-metal-sdm",
            Self::Modified => "modified",
        }
    }
}

/// Squared reflection coefficients for TM (parallel, `r1_sq`) and TE
/// (perpendicular, `r2_sq`) polarizations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionPair<T = f64> {
    pub r1_sq: T,
    pub r2_sq: T,
}

/// A point in the dimensionless (x, y) plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimlessPoint<T = f64> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> DimlessPoint<T> {
    pub fn new(x: T, y: T) -> Result<Self> {
        if !(x >= T::zero() && y >= x && y.is_finite()) {
            return Err(CasimirError::domain(format!(
                "dimensionless point requires y >= x >= 0 (got x = {x}, y = {y})"
            )));
        }
        Ok(Self { x, y })
    }
}

/// Fresnel coefficient r = u − v stored through u = P/(P+M), v = M/(P+M) so
/// that 1 − r² = 4uv keeps full relative accuracy when |r| → 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Fresnel<T> {
    u: T,
    v: T,
}

impl<T: Scalar> Fresnel<T> {
    pub(crate) fn perfect() -> Self {
        Self { u: T::one(), v: T::zero() }
    }

    pub(crate) fn transparent() -> Self {
        let h = T::lit(0.5);
        Self { u: h, v: h }
    }

    /// r = (p − m)/(p + m) for p, m ≥ 0, p + m > 0.
    pub(crate) fn from_ratio(p: T, m: T) -> Self {
        let s = p + m;
        Self { u: p / s, v: m / s }
    }

    pub(crate) fn r_sq(&self) -> T {
        (self.u - self.v).powi(2)
    }

    /// 1 − r²e^{−y} without cancellation.
    fn one_minus(&self, y: T, damped: T) -> T {
        if damped < T::lit(0.5) {
            T::one() - damped
        } else {
            T::lit(4.0) * self.u * self.v - self.r_sq() * (-y).exp_m1()
        }
    }

    /// ln(1 − r²e^{−y}).
    pub(crate) fn log_one_minus(&self, y: T) -> T {
        let damped = self.r_sq() * (-y).exp();
        if damped < T::lit(0.5) {
            (-damped).ln_1p()
        } else {
            self.one_minus(y, damped).ln()
        }
    }

    /// r²e^{−y}/(1 − r²e^{−y}).
    pub(crate) fn occupation(&self, y: T) -> T {
        let damped = self.r_sq() * (-y).exp();
        damped / self.one_minus(y, damped)
    }
}

/// Dielectric model expressed in the dimensionless variables of one gap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum ScaledModel<T> {
    Ideal,
    Plasma { w2: T },
    Drude { w2: T, g: T },
    Dielectric { eps0: T },
}

impl<T: Scalar> ScaledModel<T> {
    /// x²(ε − 1): finite as x → 0 for the metals.
    fn chi(&self, x: T) -> T {
        match *self {
            Self::Ideal => T::infinity(),
            Self::Plasma { w2 } => w2,
            Self::Drude { w2, g } => w2 * x / (x + g),
            Self::Dielectric { eps0 } => x * x * (eps0 - T::one()),
        }
    }

    /// [TM, TE] Fresnel coefficients at x > 0, y ≥ x.
    pub(crate) fn fresnel(&self, x: T, y: T) -> [Fresnel<T>; 2] {
        if let Self::Ideal = self {
            return [Fresnel::perfect(); 2];
        }
        let chi = self.chi(x);
        let k = (y * y + chi).sqrt();
        let x2 = x * x;
        // TM: (εy − k)/(εy + k) multiplied through by x².
        let tm = Fresnel::from_ratio((x2 + chi) * y, x2 * k);
        let te = Fresnel::from_ratio(y, k);
        [tm, te]
    }

    /// [TM, TE] coefficients used in the l = 0 term.
    pub(crate) fn zero_frequency(&self, prescription: Prescription, y: T) -> [Fresnel<T>; 2] {
        if prescription == Prescription::PerfectConductor {
            return [Fresnel::perfect(); 2];
        }
        match *self {
            Self::Ideal => [Fresnel::perfect(); 2],
            Self::Plasma { w2 } => [Fresnel::perfect(), Fresnel::from_ratio(y, (y * y + w2).sqrt())],
            Self::Dielectric { eps0 } => [Fresnel::from_ratio(eps0, T::one()), Fresnel::transparent()],
            Self::Drude { .. } => match prescription {
                Prescription::AsIs => [Fresnel::perfect(), Fresnel::transparent()],
                _ => [Fresnel::perfect(), self.fresnel(y, y)[1]],
            },
        }
    }

    /// TE coefficient in the limit x → 0⁺ at fixed y.
    pub(crate) fn te_static_limit(&self, y: T) -> Fresnel<T> {
        match *self {
            Self::Ideal => Fresnel::perfect(),
            Self::Plasma { w2 } => Fresnel::from_ratio(y, (y * y + w2).sqrt()),
            Self::Drude { .. } | Self::Dielectric { .. } => Fresnel::transparent(),
        }
    }
}

fn pair<T: Scalar>(f: [Fresnel<T>; 2]) -> ReflectionPair<T> {
    ReflectionPair {
        r1_sq: f[0].r_sq(),
        r2_sq: f[1].r_sq(),
    }
}

/// ε(iξ) for photon energy `hbar_xi` (eV). The ideal metal returns +∞.
pub fn permittivity<T: Scalar>(model: &DielectricModel<T>, hbar_xi: T) -> Result<T> {
    model.validate()?;
    if !(hbar_xi >= T::zero()) {
        return Err(CasimirError::domain(format!("frequency must be >= 0 (got {hbar_xi})")));
    }
    let singular = || {
        CasimirError::domain("zero-frequency permittivity is singular; use zero_frequency_reflection")
    };
    match *model {
        DielectricModel::IdealMetal => Ok(T::infinity()),
        DielectricModel::ConstantDielectric { eps0 } => Ok(eps0),
        DielectricModel::Plasma { omega_p } => {
            if hbar_xi == T::zero() {
                return Err(singular());
            }
            Ok(T::one() + (omega_p / hbar_xi).powi(2))
        }
        DielectricModel::Drude { omega_p, gamma } => {
            if hbar_xi == T::zero() {
                return Err(singular());
            }
            if gamma == T::zero() {
                return Ok(T::one() + (omega_p / hbar_xi).powi(2));
            }
            Ok(T::one() + omega_p * omega_p / (hbar_xi * (hbar_xi + gamma)))
        }
    }
}

/// Squared reflection coefficients at a nonzero Matsubara-type point.
pub fn reflection_pair<T: Scalar>(
    model: &DielectricModel<T>,
    a_um: T,
    point: DimlessPoint<T>,
) -> Result<ReflectionPair<T>> {
    model.validate()?;
    check_gap(a_um)?;
    if !(point.x > T::zero()) {
        return Err(CasimirError::domain(
            "reflection_pair needs x > 0; use zero_frequency_reflection at x = 0",
        ));
    }
    if !(point.y >= point.x) {
        return Err(CasimirError::domain(format!(
            "y must be >= x (got x = {}, y = {})",
            point.x, point.y
        )));
    }
    Ok(pair(model.scaled(a_um).fresnel(point.x, point.y)))
}

/// Squared reflection coefficients entering the l = 0 term at transverse
/// variable `y` under the given prescription.
pub fn zero_frequency_reflection<T: Scalar>(
    model: &DielectricModel<T>,
    prescription: Prescription,
    y: T,
    a_um: T,
) -> Result<ReflectionPair<T>> {
    model.validate()?;
    check_gap(a_um)?;
    if !(y > T::zero()) {
        return Err(CasimirError::domain(format!("y must be > 0 (got {y})")));
    }
    Ok(pair(model.scaled(a_um).zero_frequency(prescription, y)))
}

/// Normal-incidence reflectivity ((√ε₀ − 1)/(√ε₀ + 1))² of real photons.
pub fn real_photon_reflection<T: Scalar>(eps0: T) -> Result<T> {
    if !(eps0 >= T::one()) {
        return Err(CasimirError::domain(format!("eps0 must be >= 1 (got {eps0})")));
    }
    let n = eps0.sqrt();
    Ok(((n - T::one()) / (n + T::one())).powi(2))
}

/// Scattering amplitudes (s₁₁^∥, s₁₁^⊥) of the one-dimensional scattering
/// problem for a gap `a_um`, photon energy `hbar_xi` (eV) and transverse
/// wave number `k_perp` (µm⁻¹). Defined only where q ≠ k.
pub fn scattering_s11<T: Scalar>(
    model: &DielectricModel<T>,
    a_um: T,
    hbar_xi: T,
    k_perp: T,
) -> Result<(T, T)> {
    model.validate()?;
    check_gap(a_um)?;
    if hbar_xi == T::zero() {
        return Err(CasimirError::domain("scattering solution undefined at zero frequency"));
    }
    if !(hbar_xi > T::zero()) || !(k_perp >= T::zero()) {
        return Err(CasimirError::domain("frequency must be > 0 and k_perp >= 0"));
    }
    if let DielectricModel::IdealMetal = model {
        return Err(CasimirError::domain(
            "scattering solution undefined for the ideal metal (infinite permittivity)",
        ));
    }
    let eps = permittivity(model, hbar_xi)?;
    if eps == T::one() {
        return Err(CasimirError::domain("scattering solution undefined where q = k (eps = 1)"));
    }
    let w = hbar_xi / T::lit(HBAR_C_EV_UM);
    let q = (w * w + k_perp * k_perp).sqrt();
    let k = (eps * w * w + k_perp * k_perp).sqrt();
    let grow = ((k - q) * a_um).exp();
    let damp = (T::lit(-2.0) * q * a_um).exp();
    let four = T::lit(4.0);
    let par = four * eps * k * q * grow / ((eps * q + k).powi(2) - (eps * q - k).powi(2) * damp);
    let perp = four * k * q * grow / ((q + k).powi(2) - (q - k).powi(2) * damp);
    if !(par.is_finite() && perp.is_finite()) {
        return Err(CasimirError::domain("scattering amplitude overflows at this point"));
    }
    Ok((par, perp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const AL: DielectricModel = DielectricModel::Drude { omega_p: 12.5, gamma: 0.063 };

    #[test]
    fn permittivity_examples() {
        let p = DielectricModel::plasma(12.5).unwrap();
        assert_eq!(permittivity(&p, 12.5).unwrap(), 2.0);
        let d = DielectricModel::constant_dielectric(7.0).unwrap();
        assert_eq!(permittivity(&d, 0.0).unwrap(), 7.0);
        assert_eq!(permittivity(&d, 3.3).unwrap(), 7.0);
        let e = permittivity(&AL, 1.0).unwrap();
        assert!((e - (1.0 + 156.25 / 1.063)).abs() < 1e-12);
        assert!((e - 147.99).abs() < 5e-3);
        assert!(permittivity(&DielectricModel::<f64>::IdealMetal, 1.0).unwrap().is_infinite());
    }

    #[test]
    fn permittivity_rejects_zero_and_negative_frequencies() {
        let err = permittivity(&DielectricModel::plasma(12.5).unwrap(), 0.0).unwrap_err();
        assert!(err.to_string().contains("use zero_frequency_reflection"));
        assert!(permittivity(&AL, 0.0).is_err());
        assert!(permittivity(&AL, -1.0).is_err());
    }

    #[test]
    fn model_validation() {
        assert!(DielectricModel::plasma(0.0).is_err());
        assert!(DielectricModel::drude(1.0, -0.1).is_err());
        assert!(DielectricModel::constant_dielectric(0.5).is_err());
        assert!(DielectricModel::drude(1.0, 0.0).is_ok());
        assert!(!DielectricModel::drude(1.0, 0.0).unwrap().is_dissipative());
        assert!(AL.is_dissipative());
    }

    #[test]
    fn ideal_metal_reflects_perfectly() {
        let m = DielectricModel::<f64>::IdealMetal;
        for (x, y) in [(1e-6, 1e-6), (0.3, 2.0), (40.0, 90.0)] {
            let r = reflection_pair(&m, 1.0, DimlessPoint::new(x, y).unwrap()).unwrap();
            assert_eq!((r.r1_sq, r.r2_sq), (1.0, 1.0));
        }
    }

    #[test]
    fn vacuum_reflects_nothing() {
        let m = DielectricModel::constant_dielectric(1.0).unwrap();
        let r = reflection_pair(&m, 1.0, DimlessPoint::new(0.7, 3.0).unwrap()).unwrap();
        assert_eq!((r.r1_sq, r.r2_sq), (0.0, 0.0));
    }

    #[test]
    fn plasma_reflection_matches_raw_variables() {
        // Oracle: Fresnel coefficients in (ξ, k⊥) with q, k written out directly.
        let (omega_p, a, x, y) = (12.5_f64, 1.0_f64, 1.0_f64, 2.0_f64);
        let xi_over_c = x / (2.0 * a); // µm⁻¹
        let q = y / (2.0 * a);
        let kp2 = q * q - xi_over_c * xi_over_c;
        let eps = 1.0 + (omega_p / (xi_over_c * HBAR_C_EV_UM)).powi(2);
        let k = (eps * xi_over_c * xi_over_c + kp2).sqrt();
        let r1 = ((eps * q - k) / (eps * q + k)).powi(2);
        let r2 = ((q - k) / (q + k)).powi(2);
        let m = DielectricModel::plasma(omega_p).unwrap();
        let r = reflection_pair(&m, a, DimlessPoint::new(x, y).unwrap()).unwrap();
        assert!((r.r1_sq - r1).abs() < 1e-14, "{} vs {r1}", r.r1_sq);
        assert!((r.r2_sq - r2).abs() < 1e-14, "{} vs {r2}", r.r2_sq);
        // Frozen from an independent 30-digit evaluation of the same formulas.
        assert!((r1 - 0.984_336_741_294_089).abs() < 1e-12, "{r1}");
        assert!((r2 - 0.938_810_142_493_032).abs() < 1e-12, "{r2}");
    }

    #[test]
    fn reflection_pair_rejects_zero_frequency_and_bad_points() {
        let m = DielectricModel::plasma(12.5).unwrap();
        let e = reflection_pair(&m, 1.0, DimlessPoint { x: 0.0, y: 1.0 }).unwrap_err();
        assert!(e.to_string().contains("zero_frequency_reflection"));
        assert!(reflection_pair(&m, 1.0, DimlessPoint { x: 2.0, y: 1.0 }).is_err());
        assert!(reflection_pair(&m, -1.0, DimlessPoint { x: 1.0, y: 2.0 }).is_err());
        assert!(DimlessPoint::new(2.0, 1.0).is_err());
    }

    #[test]
    fn zero_frequency_examples() {
        for y in [1e-3, 0.5, 7.0] {
            let r = zero_frequency_reflection(&AL, Prescription::AsIs, y, 1.0).unwrap();
            assert_eq!((r.r1_sq, r.r2_sq), (1.0, 0.0));
            let d = DielectricModel::constant_dielectric(7.0).unwrap();
            let r = zero_frequency_reflection(&d, Prescription::AsIs, y, 1.0).unwrap();
            assert!((r.r1_sq - 0.5625).abs() < 1e-15);
            assert_eq!(r.r2_sq, 0.0);
            for m in [AL, d, DielectricModel::plasma(3.0).unwrap()] {
                let r = zero_frequency_reflection(&m, Prescription::PerfectConductor, y, 1.0).unwrap();
                assert_eq!((r.r1_sq, r.r2_sq), (1.0, 1.0));
            }
        }
        let p = DielectricModel::plasma(12.5_f64).unwrap();
        let r = zero_frequency_reflection(&p, Prescription::AsIs, 1e-9, 1.0).unwrap();
        assert_eq!(r.r1_sq, 1.0);
        assert!((r.r2_sq - 1.0).abs() < 1e-9);
        assert!(zero_frequency_reflection(&p, Prescription::AsIs, 0.0, 1.0).is_err());
        assert!(zero_frequency_reflection(&p, Prescription::AsIs, 1.0, 0.0).is_err());
    }

    #[test]
    fn plasma_zero_frequency_te_matches_static_formula() {
        // r₂² = ((k⊥ − sqrt(k⊥² + ω_p²/c²))/(k⊥ + sqrt(...)))² with k⊥ = y/(2a).
        let (a, y) = (0.8, 1.7);
        let kp = y / (2.0 * a);
        let wc = 12.5 / HBAR_C_EV_UM;
        let s = (kp * kp + wc * wc).sqrt();
        let want = ((kp - s) / (kp + s)).powi(2);
        let p = DielectricModel::plasma(12.5).unwrap();
        for pr in [Prescription::AsIs, Prescription::Modified] {
            let r = zero_frequency_reflection(&p, pr, y, a).unwrap();
            assert!((r.r2_sq - want).abs() < 1e-15);
        }
    }

    #[test]
    fn modified_drude_uses_diagonal_te_coefficient() {
        let (a, y) = (1.0, 2.5);
        let r0 = zero_frequency_reflection(&AL, Prescription::Modified, y, a).unwrap();
        let diag = reflection_pair(&AL, a, DimlessPoint::new(y, y).unwrap()).unwrap();
        assert_eq!(r0.r1_sq, 1.0);
        assert_eq!(r0.r2_sq, diag.r2_sq);
    }

    #[test]
    fn real_photon_examples() {
        assert_eq!(real_photon_reflection(1.0).unwrap(), 0.0);
        // ((√7 − 1)/(√7 + 1))² = (8 − 2√7)/(8 + 2√7)
        let r = real_photon_reflection(7.0_f64).unwrap();
        assert!((r - 0.203_776_612_387_031).abs() < 1e-12, "{r}");
        assert!(real_photon_reflection(0.9).is_err());
    }

    #[test]
    fn dielectric_ordering_against_real_photons() {
        for eps0 in [1.5, 2.0, 7.0, 100.0] {
            let m = DielectricModel::constant_dielectric(eps0).unwrap();
            let r = zero_frequency_reflection(&m, Prescription::AsIs, 1.0, 1.0).unwrap();
            let rr = real_photon_reflection(eps0).unwrap();
            assert!(r.r1_sq > rr && rr > r.r2_sq && r.r2_sq == 0.0, "eps0 = {eps0}");
        }
    }

    #[test]
    fn ideal_metal_limit_of_plasma() {
        let m = DielectricModel::plasma(1.0e4).unwrap();
        for (x, y) in [(0.1, 0.2), (1.0, 2.0), (3.0, 10.0)] {
            let r = reflection_pair(&m, 1.0, DimlessPoint::new(x, y).unwrap()).unwrap();
            assert!((1.0 - r.r1_sq) < 1e-3 && (1.0 - r.r2_sq) < 1e-3, "{r:?}");
        }
    }

    #[test]
    fn scattering_is_undefined_where_q_equals_k() {
        let vac = DielectricModel::constant_dielectric(1.0).unwrap();
        assert!(scattering_s11(&vac, 1.0, 1.0, 1.0).is_err());
        let p = DielectricModel::plasma(12.5).unwrap();
        let e = scattering_s11(&p, 1.0, 0.0, 1.0).unwrap_err();
        assert!(e.to_string().contains("zero frequency"));
        assert!(scattering_s11(&DielectricModel::<f64>::IdealMetal, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn scattering_example_is_finite_and_positive() {
        let p = DielectricModel::plasma(12.5_f64).unwrap();
        let (par, perp) = scattering_s11(&p, 1.0, 1.0, 1.0).unwrap();
        assert!(par.is_finite() && par > 0.0);
        assert!(perp.is_finite() && perp > 0.0);
        // Frozen from a 40-digit evaluation of the unscaled amplitudes.
        assert!((par.ln() - 57.079_187_586_846).abs() < 1e-9, "{}", par.ln());
        assert!((perp.ln() - 57.111_532_577_345).abs() < 1e-9, "{}", perp.ln());
    }

    #[test]
    fn drude_with_zero_gamma_is_plasma() {
        let d = DielectricModel::drude(9.0, 0.0).unwrap();
        let p = DielectricModel::plasma(9.0).unwrap();
        assert_eq!(d.scaled(1.3), p.scaled(1.3));
        assert_eq!(permittivity(&d, 0.4).unwrap(), permittivity(&p, 0.4).unwrap());
    }

    fn any_model() -> impl Strategy<Value = DielectricModel> {
        prop_oneof![
            Just(DielectricModel::IdealMetal),
            (0.1..50.0f64).prop_map(|w| DielectricModel::Plasma { omega_p: w }),
            (0.1..50.0f64, 0.0..2.0f64).prop_map(|(w, g)| DielectricModel::Drude { omega_p: w, gamma: g }),
            (1.0..200.0f64).prop_map(|e| DielectricModel::ConstantDielectric { eps0: e }),
        ]
    }

    proptest! {
        #[test]
        fn coefficients_are_bounded_and_ordered(
            model in any_model(),
            a in 0.05..10.0f64,
            x in 1e-4..60.0f64,
            dy in 0.0..60.0f64,
        ) {
            let r = reflection_pair(&model, a, DimlessPoint::new(x, x + dy).unwrap()).unwrap();
            prop_assert!((0.0..=1.0).contains(&r.r1_sq));
            prop_assert!((0.0..=1.0).contains(&r.r2_sq));
            prop_assert!(r.r1_sq >= r.r2_sq - 1e-15);
            for pr in Prescription::ALL {
                let z = zero_frequency_reflection(&model, pr, x + dy, a).unwrap();
                prop_assert!((0.0..=1.0).contains(&z.r1_sq) && (0.0..=1.0).contains(&z.r2_sq));
                prop_assert!(z.r1_sq >= z.r2_sq);
            }
        }

        #[test]
        fn drude_converges_to_plasma_as_gamma_vanishes(
            w in 0.5..30.0f64, x in 1e-2..30.0f64, dy in 0.0..30.0f64,
        ) {
            let p = DielectricModel::plasma(w).unwrap();
            let d = DielectricModel::drude(w, 1e-9).unwrap();
            let pt = DimlessPoint::new(x, x + dy).unwrap();
            let rp = reflection_pair(&p, 1.0, pt).unwrap();
            let rd = reflection_pair(&d, 1.0, pt).unwrap();
            prop_assert!((rp.r1_sq - rd.r1_sq).abs() < 1e-6);
            prop_assert!((rp.r2_sq - rd.r2_sq).abs() < 1e-6);
            let ep = permittivity(&p, x).unwrap();
            let ed = permittivity(&d, x).unwrap();
            prop_assert!(((ep - ed) / ep).abs() < 2e-9 / x);
        }

        #[test]
        fn log_and_occupation_agree_with_naive_forms(
            model in any_model(), x in 1e-3..20.0f64, dy in 1e-3..20.0f64,
        ) {
            let y = x + dy;
            for f in model.scaled(1.0).fresnel(x, y) {
                let d = f.r_sq() * (-y).exp();
                prop_assert!((f.log_one_minus(y) - (1.0 - d).ln()).abs() < 1e-12 * (1.0 + (1.0 - d).ln().abs()) / (1.0 - d));
                prop_assert!(((f.occupation(y) - d / (1.0 - d)) / (1.0 + d / (1.0 - d))).abs() < 1e-10);
            }
        }
    }
}
