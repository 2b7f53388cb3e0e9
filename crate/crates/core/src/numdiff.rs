//! Finite-difference derivatives.

use crate::scalar::Scalar;

/// Five-point central difference, truncation error O(h⁴).
pub fn central_5pt<T: Scalar, E, F>(f: F, x: T, h: T) -> Result<T, E>
where
    F: Fn(T) -> Result<T, E>,
{
    let two = T::lit(2.0);
    let f_m2 = f(x - two * h)?;
    let f_m1 = f(x - h)?;
    let f_p1 = f(x + h)?;
    let f_p2 = f(x + two * h)?;
    Ok((f_m2 - T::lit(8.0) * f_m1 + T::lit(8.0) * f_p1 - f_p2) / (T::lit(12.0) * h))
}

/// Derivative estimate with its error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivative<T> {
    pub value: T,
    pub error: T,
}

/// Central difference at step `h` and `h/2`, combined by one Richardson step.
///
/// The reported error is the size of the Richardson correction.
pub fn richardson_central<T: Scalar, E, F>(f: F, x: T, h: T) -> Result<Derivative<T>, E>
where
    F: Fn(T) -> Result<T, E>,
{
    let two = T::lit(2.0);
    let half = h / two;
    let d_h = (f(x + h)? - f(x - h)?) / (two * h);
    let d_half = (f(x + half)? - f(x - half)?) / (two * half);
    let three = T::lit(3.0);
    Ok(Derivative {
        value: (T::lit(4.0) * d_half - d_h) / three,
        error: (d_half - d_h).abs() / three,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::convert::Infallible;

    #[test]
    fn five_point_is_exact_for_quartics() {
        let f = |x: f64| Ok::<_, Infallible>(x.powi(4) - 3.0 * x.powi(3) + x);
        let d = central_5pt(f, 1.5, 0.1).unwrap();
        let exact = 4.0 * 1.5f64.powi(3) - 9.0 * 1.5f64.powi(2) + 1.0;
        assert!((d - exact).abs() < 1e-11, "{d} vs {exact}");
    }

    #[test]
    fn richardson_removes_quadratic_step_error() {
        let f = |x: f64| Ok::<_, Infallible>(x.powi(3));
        let d = richardson_central(f, 2.0, 0.5).unwrap();
        assert!((d.value - 12.0).abs() < 1e-12);
        // D(h) = 3x² + h², D(h/2) = 3x² + h²/4.
        assert!((d.error - 0.0625).abs() < 1e-12);
    }

    #[test]
    fn richardson_on_smooth_function() {
        let f = |x: f64| Ok::<_, Infallible>(x.sin());
        let d = richardson_central(f, 0.7, 0.05).unwrap();
        assert!((d.value - 0.7f64.cos()).abs() < 1e-7);
        assert!(d.error < 1e-4);
    }
}
