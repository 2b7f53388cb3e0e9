//! Adaptive Gauss–Kronrod quadrature on finite intervals.
//!
//! Globally adaptive bisection driven by the 10-point Gauss / 21-point Kronrod
//! pair, with the usual QUADPACK error scaling and round-off floor. Intervals
//! whose error has reached the round-off floor are never split again; when only
//! such intervals remain the integral is accepted as round-off limited.

use crate::scalar::Scalar;

// Kronrod abscissae, positive half; the odd indices are the Gauss nodes.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_877_192_582,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// 10-point Gauss weights at XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Stopping policy for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum number of bisections.
    pub max_subdivisions: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            abs_tol: 0.0,
            rel_tol: 1e-10,
            max_subdivisions: 200,
        }
    }
}

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral<T> {
    pub value: T,
    /// Estimated absolute error.
    pub error: T,
    pub evaluations: usize,
    pub subdivisions: usize,
    /// `false` when the subdivision budget ran out before the tolerance was met.
    pub converged: bool,
}

#[derive(Debug, Clone, Copy)]
struct Panel<T> {
    lo: T,
    hi: T,
    value: T,
    error: T,
    floor: T,
}

/// One 21-point Kronrod panel: (value, error, round-off floor).
fn kronrod21<T: Scalar, F: Fn(T) -> T>(f: &F, lo: T, hi: T) -> (T, T, T) {
    let half = T::lit(0.5);
    let center = half * (lo + hi);
    let half_len = half * (hi - lo);
    let fc = f(center);

    let mut res_k = fc * T::lit(WGK[10]);
    let mut res_g = T::zero();
    let mut res_abs = res_k.abs();
    let mut fv1 = [T::zero(); 10];
    let mut fv2 = [T::zero(); 10];
    for j in 0..10 {
        let dx = half_len * T::lit(XGK[j]);
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        let w = T::lit(WGK[j]);
        res_k = res_k + w * (f1 + f2);
        res_abs = res_abs + w * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g = res_g + T::lit(WG[j / 2]) * (f1 + f2);
        }
        fv1[j] = f1;
        fv2[j] = f2;
    }
    let mean = res_k * half;
    let mut res_asc = T::lit(WGK[10]) * (fc - mean).abs();
    for j in 0..10 {
        res_asc = res_asc + T::lit(WGK[j]) * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let value = res_k * half_len;
    let abs_half = half_len.abs();
    let res_abs = res_abs * abs_half;
    let res_asc = res_asc * abs_half;
    let mut error = ((res_k - res_g) * half_len).abs();
    if res_asc != T::zero() && error != T::zero() {
        let scale = (T::lit(200.0) * error / res_asc).powf(T::lit(1.5));
        error = res_asc * scale.min(T::one());
    }
    let eps = T::epsilon();
    let floor = T::lit(50.0) * eps * res_abs;
    if res_abs > T::min_positive_value() / (T::lit(50.0) * eps) {
        error = error.max(floor);
    }
    (value, error, floor)
}

/// Integrates `f` over `[lo, hi]`.
pub fn integrate<T: Scalar, F: Fn(T) -> T>(f: F, lo: T, hi: T, opts: &QuadOptions) -> Integral<T> {
    integrate_with_breakpoints(f, &[lo, hi], opts)
}

/// Integrates `f` over `[points[0], points[last]]`, seeding the adaptive
/// partition with the given (ascending) breakpoints.
pub fn integrate_with_breakpoints<T: Scalar, F: Fn(T) -> T>(
    f: F,
    points: &[T],
    opts: &QuadOptions,
) -> Integral<T> {
    assert!(points.len() >= 2, "need at least one interval");
    let mut panels: Vec<Panel<T>> = points
        .windows(2)
        .map(|w| {
            let (value, error, floor) = kronrod21(&f, w[0], w[1]);
            Panel {
                lo: w[0],
                hi: w[1],
                value,
                error,
                floor,
            }
        })
        .collect();
    let mut evaluations = 21 * panels.len();
    let mut subdivisions = 0;
    let abs_tol = T::lit(opts.abs_tol);
    let rel_tol = T::lit(opts.rel_tol);

    loop {
        let value = panels.iter().fold(T::zero(), |acc, p| acc + p.value);
        let error = panels.iter().fold(T::zero(), |acc, p| acc + p.error);
        let tol = abs_tol.max(rel_tol * value.abs());
        if error <= tol {
            return Integral {
                value,
                error,
                evaluations,
                subdivisions,
                converged: true,
            };
        }

        // Largest-error panel that is still above its round-off floor.
        let worst = panels
            .iter()
            .enumerate()
            .filter(|(_, p)| p.error > p.floor)
            .max_by(|(_, a), (_, b)| a.error.partial_cmp(&b.error).unwrap_or(std::cmp::Ordering::Equal))
            .map(|(i, _)| i);

        let Some(i) = worst else {
            // Only round-off remains; nothing more can be gained.
            return Integral {
                value,
                error,
                evaluations,
                subdivisions,
                converged: true,
            };
        };
        if subdivisions >= opts.max_subdivisions {
            return Integral {
                value,
                error,
                evaluations,
                subdivisions,
                converged: false,
            };
        }

        let p = panels.swap_remove(i);
        let mid = T::lit(0.5) * (p.lo + p.hi);
        if !(mid > p.lo && mid < p.hi) {
            // Interval is at machine resolution: freeze it at its floor.
            panels.push(Panel { floor: p.error, ..p });
            continue;
        }
        for (lo, hi) in [(p.lo, mid), (mid, p.hi)] {
            let (value, error, floor) = kronrod21(&f, lo, hi);
            panels.push(Panel {
                lo,
                hi,
                value,
                error,
                floor,
            });
        }
        evaluations += 42;
        subdivisions += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_interval_length() {
        let k: f64 = 2.0 * WGK[..10].iter().sum::<f64>() + WGK[10];
        let g: f64 = 2.0 * WG.iter().sum::<f64>();
        assert!((k - 2.0).abs() < 1e-15);
        assert!((g - 2.0).abs() < 1e-15);
    }

    #[test]
    fn kronrod_is_exact_through_degree_31() {
        for deg in [0_i32, 5, 19, 30, 31] {
            let (v, _, _) = kronrod21(&|x: f64| x.powi(deg), 0.0, 1.0);
            let exact = 1.0 / f64::from(deg + 1);
            assert!((v - exact).abs() < 1e-14, "degree {deg}: {v} vs {exact}");
        }
    }

    #[test]
    fn integrates_exponential_decay() {
        let r = integrate(|y: f64| y * (-y).exp(), 0.0, 50.0, &QuadOptions::default());
        // ∫_0^50 y e^{-y} dy = 1 - 51 e^{-50}
        let exact = 1.0 - 51.0 * (-50.0f64).exp();
        assert!(r.converged);
        assert!((r.value - exact).abs() < 1e-13, "{}", r.value);
        assert!(r.error >= (r.value - exact).abs());
    }

    #[test]
    fn handles_endpoint_log_singularity() {
        // ∫_0^1 ln x dx = -1
        let r = integrate(|x: f64| x.ln(), 0.0, 1.0, &QuadOptions { rel_tol: 1e-12, ..Default::default() });
        assert!(r.converged);
        assert!((r.value + 1.0).abs() < 1e-11, "{}", r.value);
    }

    #[test]
    fn reports_non_convergence_when_budget_is_exhausted() {
        let opts = QuadOptions {
            abs_tol: 0.0,
            rel_tol: 1e-14,
            max_subdivisions: 2,
        };
        let r = integrate(|x: f64| (50.0 * x).sin().abs(), 0.0, 3.0, &opts);
        assert!(!r.converged);
        assert_eq!(r.subdivisions, 2);
    }

    #[test]
    fn works_in_single_precision() {
        let r = integrate(|x: f32| x.cos(), 0.0, 1.0, &QuadOptions { rel_tol: 1e-12, ..Default::default() });
        assert!(r.converged);
        assert!((r.value - 1.0_f32.sin()).abs() < 1e-6);
    }

    #[test]
    fn breakpoints_give_same_answer() {
        let f = |y: f64| y * y * (-y).exp();
        let a = integrate(f, 0.0, 40.0, &QuadOptions::default());
        let b = integrate_with_breakpoints(f, &[0.0, 1.0, 5.0, 40.0], &QuadOptions::default());
        assert!((a.value - b.value).abs() < 1e-12);
    }
}
