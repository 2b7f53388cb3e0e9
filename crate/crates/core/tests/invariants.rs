use casimir::{
    force_plates, force_plates_any, force_plates_zero_temperature, free_energy_plates, free_energy_plates_any,
    free_energy_plates_zero_temperature, numdiff::central_5pt, zero_frequency_derivative_term, DielectricModelF64,
    PlatesConfigF64, Prescription, QuadratureSettings,
};

fn al() -> DielectricModelF64 {
    DielectricModelF64::drude(12.5, 0.063).unwrap()
}

fn plasma() -> DielectricModelF64 {
    DielectricModelF64::plasma(12.5).unwrap()
}

fn glass() -> DielectricModelF64 {
    DielectricModelF64::constant_dielectric(7.0).unwrap()
}

fn all_models() -> [DielectricModelF64; 4] {
    [DielectricModelF64::IdealMetal, plasma(), al(), glass()]
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn force_is_minus_energy_gradient() {
    let q = QuadratureSettings::default().for_differencing();
    let cases = [
        (plasma(), Prescription::AsIs),
        (al(), Prescription::Modified),
        (al(), Prescription::AsIs),
        (glass(), Prescription::AsIs),
        (plasma(), Prescription::PerfectConductor),
    ];
    for (m, p) in cases {
        for a in [0.5, 1.0, 2.0] {
            let energy = |a: f64| -> casimir::Result<f64> {
                Ok(free_energy_plates(&PlatesConfigF64::new(a, 300.0)?, &m, p, &q)?.value)
            };
            // J/m² per µm → Pa
            let de_da = central_5pt(energy, a, 1e-3 * a).unwrap() * 1e6;
            let f = force_plates(&PlatesConfigF64::new(a, 300.0).unwrap(), &m, p, &q).unwrap().value;
            assert!(rel(-de_da, f) < 1e-4, "{m:?} {p:?} a={a}: {} vs {f}", -de_da);
        }
    }
}

#[test]
fn zero_temperature_force_is_minus_energy_gradient() {
    let q = QuadratureSettings { rel_tol: 1e-12, ..Default::default() };
    for m in [plasma(), al()] {
        let a = 0.8;
        let energy = |a: f64| free_energy_plates_zero_temperature(a, &m, &q).map(|e| e.value);
        let de_da = central_5pt(energy, a, 1e-3 * a).unwrap() * 1e6;
        let f = force_plates_zero_temperature(a, &m, &q).unwrap().value;
        assert!(rel(-de_da, f) < 1e-6, "{m:?}: {} vs {f}", -de_da);
    }
}

#[test]
fn prescriptions_agree_for_non_dissipative_models() {
    let q = QuadratureSettings::default();
    for m in [DielectricModelF64::IdealMetal, plasma(), glass()] {
        for (a, t) in [(0.5, 300.0), (1.0, 300.0), (3.0, 77.0)] {
            let cfg = PlatesConfigF64::new(a, t).unwrap();
            let e1 = free_energy_plates(&cfg, &m, Prescription::AsIs, &q).unwrap();
            let e2 = free_energy_plates(&cfg, &m, Prescription::Modified, &q).unwrap();
            assert!((e1.value - e2.value).abs() <= e1.est_error + e2.est_error, "{m:?} a={a}");
        }
    }
    for m in [DielectricModelF64::IdealMetal, plasma()] {
        let d = zero_frequency_derivative_term(&PlatesConfigF64::new(1.0, 300.0).unwrap(), &m, &q).unwrap();
        assert_eq!(d.value, 0.0, "{m:?}");
    }
}

#[test]
fn as_is_drude_is_discontinuous_in_gamma() {
    let q = QuadratureSettings::default();
    let cfg = PlatesConfigF64::new(1.0, 300.0).unwrap();
    let ep = free_energy_plates(&cfg, &plasma(), Prescription::AsIs, &q).unwrap().value;
    let nearly = DielectricModelF64::drude(12.5, 1e-6).unwrap();
    let as_is = free_energy_plates(&cfg, &nearly, Prescription::AsIs, &q).unwrap().value;
    let modified = free_energy_plates(&cfg, &nearly, Prescription::Modified, &q).unwrap().value;
    assert!(rel(as_is, ep) > 10.0 * q.rel_tol);
    assert!(rel(as_is, ep) > 1e-2);
    assert!(rel(modified, ep) < 1e-4, "{}", rel(modified, ep));

    // The subtracted derivative term tends to a γ-independent nonzero value
    // as γ → 0⁺, but is zero at γ = 0.
    let d = |g: f64| {
        let m = DielectricModelF64::drude(12.5, g).unwrap();
        zero_frequency_derivative_term(&cfg, &m, &q).unwrap().value
    };
    let (d1, d2) = (d(1e-4), d(1e-6));
    assert!(d1 != 0.0 && rel(d2, d1) < 1e-2, "{d1} {d2}");
    assert_eq!(d(0.0), 0.0);
}

#[test]
fn free_energy_magnitude_decreases_with_gap() {
    let q = QuadratureSettings::default();
    for m in all_models() {
        for p in Prescription::ALL {
            let mut prev = f64::INFINITY;
            for a in [0.25, 0.5, 1.0, 2.0, 4.0] {
                let e = free_energy_plates(&PlatesConfigF64::new(a, 300.0).unwrap(), &m, p, &q).unwrap().value;
                assert!(e < 0.0, "{m:?} {p:?} a={a}");
                assert!(e.abs() < prev, "{m:?} {p:?} a={a}");
                prev = e.abs();
            }
        }
    }
}

#[test]
fn millikelvin_sum_matches_zero_temperature_integral() {
    let q = QuadratureSettings::default();
    let cfg = PlatesConfigF64::new(0.5, 0.01).unwrap();
    for m in [plasma(), al()] {
        let f = force_plates(&cfg, &m, Prescription::AsIs, &q).unwrap().value;
        let f0 = force_plates_zero_temperature(0.5, &m, &q).unwrap().value;
        assert!(rel(f, f0) < 1e-3, "{m:?}: {f} vs {f0}");
    }
}

#[test]
fn room_temperature_barely_matters_at_small_gaps() {
    let q = QuadratureSettings::default();
    for m in all_models() {
        for p in [Prescription::AsIs, Prescription::Modified] {
            let f = force_plates_any(&PlatesConfigF64::new(0.1, 300.0).unwrap(), &m, p, &q).unwrap().value;
            let f0 = force_plates_any(&PlatesConfigF64::new(0.1, 0.0).unwrap(), &m, p, &q).unwrap().value;
            assert!(rel(f, f0) < 1e-2, "{m:?} {p:?}: {f} vs {f0}");
        }
    }
}

#[test]
fn reported_error_covers_tighter_truncation() {
    let q = QuadratureSettings::default();
    let tight = QuadratureSettings { matsubara_tail_tol: 1e-15, rel_tol: 1e-12, ..q };
    let doubled = QuadratureSettings { max_terms: 2 * q.max_terms, ..q };
    for m in [plasma(), al(), glass()] {
        for (a, t) in [(0.3, 300.0), (1.0, 300.0), (1.0, 10.0), (5.0, 1000.0)] {
            let cfg = PlatesConfigF64::new(a, t).unwrap();
            let e = free_energy_plates(&cfg, &m, Prescription::AsIs, &q).unwrap();
            let e_tight = free_energy_plates(&cfg, &m, Prescription::AsIs, &tight).unwrap();
            let e_doubled = free_energy_plates(&cfg, &m, Prescription::AsIs, &doubled).unwrap();
            assert!((e.value - e_tight.value).abs() <= e.est_error, "{m:?} a={a} T={t}");
            assert!((e.value - e_doubled.value).abs() <= e.est_error);
            assert!(e.terms_used >= 1 && e.est_error >= 0.0);
        }
    }
}

#[test]
fn plasma_approaches_ideal_metal_for_huge_plasma_frequency() {
    let q = QuadratureSettings::default();
    let cfg = PlatesConfigF64::new(1.0, 300.0).unwrap();
    let hard = DielectricModelF64::plasma(1e4).unwrap();
    let f = force_plates(&cfg, &hard, Prescription::AsIs, &q).unwrap().value;
    let fi = force_plates(&cfg, &DielectricModelF64::IdealMetal, Prescription::AsIs, &q).unwrap().value;
    assert!(rel(f, fi) < 1e-3, "{f} vs {fi}");
}

#[test]
fn zero_temperature_plasma_force_follows_skin_depth_expansion() {
    // Large-gap expansion in δ = δ₀/a of the plasma-model pressure at T = 0:
    // 1 − 16δ/3 + 24δ² − (640/7)(1 − π²/210)δ³ + O(δ⁴).
    let q = QuadratureSettings { rel_tol: 1e-12, ..Default::default() };
    let delta0: f64 = 0.197_326_980_4 / 12.5;
    let pi2 = std::f64::consts::PI.powi(2);
    for a in [1.0_f64, 2.0, 4.0] {
        let d = delta0 / a;
        let expansion = 1.0 - 16.0 / 3.0 * d + 24.0 * d * d - 640.0 / 7.0 * (1.0 - pi2 / 210.0) * d.powi(3);
        let ideal = force_plates_zero_temperature(a, &DielectricModelF64::IdealMetal, &q).unwrap().value;
        let f = force_plates_zero_temperature(a, &plasma(), &q).unwrap().value;
        assert!((f / ideal - expansion).abs() < 2e-5, "a={a}: {} vs {expansion}", f / ideal);
        let e_ideal = free_energy_plates_zero_temperature(a, &DielectricModelF64::IdealMetal, &q).unwrap().value;
        let e = free_energy_plates_zero_temperature(a, &plasma(), &q).unwrap().value;
        let e_exp = 1.0 - 4.0 * d + 72.0 / 5.0 * d * d - 320.0 / 7.0 * (1.0 - pi2 / 210.0) * d.powi(3);
        assert!((e / e_ideal - e_exp).abs() < 2e-5, "a={a}: {} vs {e_exp}", e / e_ideal);
    }
}

#[test]
fn any_dispatch_matches_dedicated_routes() {
    let q = QuadratureSettings::default();
    let e0 = free_energy_plates_any(&PlatesConfigF64::new(1.0, 0.0).unwrap(), &al(), Prescription::AsIs, &q).unwrap();
    let e0_direct = free_energy_plates_zero_temperature(1.0, &al(), &q).unwrap();
    assert_eq!(e0.value, e0_direct.value);
    let cfg = PlatesConfigF64::new(1.0, 300.0).unwrap();
    let e = free_energy_plates_any(&cfg, &al(), Prescription::AsIs, &q).unwrap();
    assert_eq!(e.value, free_energy_plates(&cfg, &al(), Prescription::AsIs, &q).unwrap().value);
}
