//! Floating-point abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar the library is generic over: `f32` or `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal or constant into `Self`.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable in scalar type")
    }

    /// Converts an index or count.
    #[inline]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Compensated (Neumaier) running sum.
///
/// The order of `add` calls fully determines the result, so callers that need
/// bit-reproducible totals must feed terms in a fixed order.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum<T> {
    sum: T,
    compensation: T,
}

impl<T: Scalar> NeumaierSum<T> {
    pub fn new() -> Self {
        Self {
            sum: T::zero(),
            compensation: T::zero(),
        }
    }

    pub fn add(&mut self, v: T) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.compensation = self.compensation + ((self.sum - t) + v);
        } else {
            self.compensation = self.compensation + ((v - t) + self.sum);
        }
        self.sum = t;
    }

    pub fn total(&self) -> T {
        self.sum + self.compensation
    }
}

impl<T: Scalar> FromIterator<T> for NeumaierSum<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut s = Self::new();
        for v in iter {
            s.add(v);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neumaier_recovers_cancelled_small_terms() {
        let terms = [1.0e16_f64, 1.0, -1.0e16, 1.0];
        let s: NeumaierSum<f64> = terms.iter().copied().collect();
        assert_eq!(s.total(), 2.0);
        assert_eq!(terms.iter().sum::<f64>(), 1.0);
    }

    #[test]
    fn lit_roundtrips_for_both_widths() {
        assert_eq!(<f64 as Scalar>::lit(0.25), 0.25);
        assert_eq!(<f32 as Scalar>::lit(0.25), 0.25_f32);
        assert_eq!(<f32 as Scalar>::from_count(7).as_f64(), 7.0);
    }
}
