//! Matsubara summation and (x, y) quadratures in dimensionless variables.
//!
//! With x = 2aξ/c and y = 2aq every term of the free energy is
//! `∫_x^∞ y Σ_pol ln(1 − r²e^{−y}) dy` and every term of the pressure is
//! `∫_x^∞ y² Σ_pol r²e^{−y}/(1 − r²e^{−y}) dy`. The physical prefactors are
//! applied by the caller.

use std::cell::Cell;

use rayon::prelude::*;

use super::QuadratureSettings;
use crate::dielectric::{Fresnel, Prescription, ScaledModel};
use crate::error::{CasimirError, ConvergenceFailure, Result};
use crate::quadrature::{integrate_with_breakpoints, QuadOptions};
use crate::scalar::{NeumaierSum, Scalar};

/// Width of the y window; the integrands carry e^{−y}.
const Y_WINDOW: f64 = 50.0;
const Y_BREAKS: [f64; 5] = [0.0, 2.0, 8.0, 20.0, Y_WINDOW];
/// Upper limit of the x integral of the zero-temperature route.
const X_WINDOW: f64 = 60.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Quantity {
    Energy,
    Force,
}

impl Quantity {
    fn integrand<T: Scalar>(self, f: &[Fresnel<T>; 2], y: T) -> T {
        match self {
            Self::Energy => y * (f[0].log_one_minus(y) + f[1].log_one_minus(y)),
            Self::Force => y * y * (f[0].occupation(y) + f[1].occupation(y)),
        }
    }

    /// Bound on |∫_Y^∞ integrand dy| for two polarizations with r² ≤ 1.
    fn tail_bound<T: Scalar>(self, upper: T) -> T {
        let e = (-upper).exp();
        let damp = T::one() / (-(-upper).exp_m1());
        let two = T::lit(2.0);
        match self {
            Self::Energy => two * (upper + T::one()) * e * damp,
            Self::Force => two * (upper * upper + two * upper + two) * e * damp,
        }
    }
}

/// One y integral: value and absolute error (quadrature + analytic tail).
#[derive(Debug, Clone, Copy)]
pub(crate) struct Term<T> {
    pub value: T,
    pub error: T,
    pub converged: bool,
}

pub(crate) fn y_integral<T: Scalar, C>(quantity: Quantity, lower: T, coeffs: C, opts: &QuadOptions) -> Term<T>
where
    C: Fn(T) -> [Fresnel<T>; 2],
{
    let breaks: Vec<T> = Y_BREAKS.iter().map(|&b| lower + T::lit(b)).collect();
    let r = integrate_with_breakpoints(|y| quantity.integrand(&coeffs(y), y), &breaks, opts);
    Term {
        value: r.value,
        error: r.error + quantity.tail_bound(lower + T::lit(Y_WINDOW)),
        converged: r.converged,
    }
}

/// Dimensionless Matsubara total `I₀ + 2 Σ_{l≥1} I_l` with its error budget.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SumOutcome<T> {
    pub total: T,
    pub error: T,
    /// Number of Matsubara terms evaluated, l = 0 included.
    pub terms: usize,
}

fn term_options(settings: &QuadratureSettings) -> QuadOptions {
    QuadOptions {
        abs_tol: 0.0,
        rel_tol: settings.rel_tol,
        max_subdivisions: settings.max_subdivisions,
    }
}

fn convergence<T: Scalar>(reason: String, partial: T, error: T, terms: usize) -> CasimirError {
    CasimirError::Convergence(Box::new(ConvergenceFailure {
        reason,
        partial_value: partial.as_f64(),
        est_error: error.as_f64(),
        terms_used: terms,
    }))
}

/// Sums the Matsubara series at reduced temperature `t = T/T_eff`.
///
/// Terms are evaluated in parallel blocks but accumulated strictly in order
/// of l, so the result does not depend on the thread count.
pub(crate) fn matsubara_sum<T: Scalar>(
    quantity: Quantity,
    model: &ScaledModel<T>,
    prescription: Prescription,
    t_reduced: T,
    settings: &QuadratureSettings,
) -> Result<SumOutcome<T>> {
    let opts = term_options(settings);
    let zero = y_integral(quantity, T::zero(), |y| model.zero_frequency(prescription, y), &opts);
    if !zero.converged {
        return Err(convergence("zero-frequency term did not converge".into(), zero.value, zero.error, 1));
    }

    let dx = T::lit(2.0) * T::PI() * t_reduced;
    let two = T::lit(2.0);
    let tail_tol = T::lit(settings.matsubara_tail_tol);
    // Past this index the terms decay at least like e^{-2π l t}.
    let l_min = (T::one() / t_reduced).ceil().to_usize().unwrap_or(usize::MAX).max(1);

    let mut acc = NeumaierSum::new();
    acc.add(zero.value);
    let mut err = zero.error;
    let mut prev: Option<T> = None;
    let mut next_l = 1usize;
    let mut block = 32usize;

    loop {
        if next_l > settings.max_terms {
            return Err(convergence(
                format!("Matsubara sum not converged within max_terms = {}", settings.max_terms),
                acc.total(),
                err,
                next_l,
            ));
        }
        let end = (next_l + block).min(settings.max_terms + 1);
        let terms: Vec<Term<T>> = (next_l..end)
            .into_par_iter()
            .map(|l| {
                let x = dx * T::from_count(l);
                y_integral(quantity, x, |y| model.fresnel(x, y), &opts)
            })
            .collect();

        for (offset, term) in terms.iter().enumerate() {
            let l = next_l + offset;
            if !term.converged {
                return Err(convergence(format!("y integral of term l = {l} did not converge"), acc.total(), err, l));
            }
            acc.add(two * term.value);
            err = err + two * term.error;

            let size = term.value.abs();
            if l >= l_min {
                if size == T::zero() {
                    return Ok(SumOutcome { total: acc.total(), error: err, terms: l + 1 });
                }
                if let Some(p) = prev {
                    let ratio = size / p;
                    if ratio < T::one() {
                        let tail = two * size * ratio / (T::one() - ratio);
                        let bar = tail_tol * acc.total().abs();
                        if two * size < bar && tail < bar {
                            return Ok(SumOutcome {
                                total: acc.total(),
                                error: err + tail,
                                terms: l + 1,
                            });
                        }
                    }
                }
            }
            prev = Some(size);
        }
        next_l = end;
        block = (block * 2).min(8192);
    }
}

/// `∫_0^∞ dx ∫_x^∞ dy (...)`, the continuous-frequency counterpart of the
/// Matsubara total (the x integral replaces `2π t Σ_l`).
pub(crate) fn zero_temperature_integral<T: Scalar>(
    quantity: Quantity,
    model: &ScaledModel<T>,
    settings: &QuadratureSettings,
) -> Result<SumOutcome<T>> {
    let inner_opts = QuadOptions {
        rel_tol: settings.rel_tol * 0.1,
        ..term_options(settings)
    };
    let worst_inner = Cell::new(T::zero());
    let failed = Cell::new(false);
    let evaluations = Cell::new(0usize);

    let inner = |x: T| {
        let t = y_integral(quantity, x, |y| model.fresnel(x, y), &inner_opts);
        evaluations.set(evaluations.get() + 1);
        if !t.converged {
            failed.set(true);
        }
        if t.value != T::zero() {
            worst_inner.set(worst_inner.get().max(t.error / t.value.abs()));
        }
        t.value
    };

    let mut breaks = vec![T::zero()];
    if let ScaledModel::Drude { g, .. } = *model {
        // Resolve the relaxation scale near x = 0.
        for b in [g, T::lit(10.0) * g] {
            if b < T::lit(0.5) && b > *breaks.last().unwrap() {
                breaks.push(b);
            }
        }
    }
    breaks.extend([0.5, 2.0, 6.0, 15.0, 30.0, X_WINDOW].iter().map(|&b| T::lit(b)));

    let outer_opts = term_options(settings);
    let r = integrate_with_breakpoints(inner, &breaks, &outer_opts);
    // Inner integrals are bounded by 2(x+2)e^{-x} for energy and 2(x³+...)e^{-x} for force.
    let upper = T::lit(X_WINDOW);
    let tail = quantity.tail_bound(upper) * (upper + T::lit(4.0));
    let error = r.error + worst_inner.get() * r.value.abs() + tail;
    if failed.get() || !r.converged {
        return Err(convergence("zero-temperature double integral did not converge".into(), r.value, error, 0));
    }
    Ok(SumOutcome {
        total: r.value,
        error,
        terms: evaluations.get(),
    })
}

/// `∫_0^∞ y [ln(1 − r₂²(y, y)e^{−y}) − ln(1 − r₂²(0⁺, y)e^{−y})] dy`: the
/// integrated x-derivative of the TE logarithm along 0 < x < y at l = 0.
pub(crate) fn te_diagonal_derivative_term<T: Scalar>(
    model: &ScaledModel<T>,
    settings: &QuadratureSettings,
) -> Result<Term<T>> {
    let opts = term_options(settings);
    let breaks: Vec<T> = Y_BREAKS.iter().map(|&b| T::lit(b)).collect();
    let r = integrate_with_breakpoints(
        |y: T| {
            if let ScaledModel::Ideal = model {
                return T::zero();
            }
            let diag = model.fresnel(y, y)[1].log_one_minus(y);
            let stat = model.te_static_limit(y).log_one_minus(y);
            y * (diag - stat)
        },
        &breaks,
        &opts,
    );
    if !r.converged {
        return Err(convergence("derivative-term integral did not converge".into(), r.value, r.error, 1));
    }
    Ok(Term {
        value: r.value,
        error: r.error + Quantity::Energy.tail_bound(T::lit(Y_WINDOW)),
        converged: true,
    })
}
