//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FromPrimitive, NumAssign};

/// Real floating-point scalar (`f32` or `f64`) backing the complex matrices.
///
/// The associated constants give per-precision default tolerances; the
/// `f64` values are the ones used throughout the documentation.
pub trait Real:
    Float + FromPrimitive + NumAssign + Sum + Default + Debug + Display + Send + Sync + 'static
{
    /// Max-norm slack for Hermiticity and unit-trace checks.
    const HERMITIAN_TOL: f64;
    /// Eigenvalue threshold separating the support from structural zeros.
    const SUPPORT_EPS: f64;
    /// Slack on the unit norm of a state vector.
    const NORM_TOL: f64;

    /// Converts an `f64` literal into this precision.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite scalar")
    }

    fn hermitian_tol() -> Self {
        Self::lit(Self::HERMITIAN_TOL)
    }

    fn support_eps() -> Self {
        Self::lit(Self::SUPPORT_EPS)
    }
}

impl Real for f64 {
    const HERMITIAN_TOL: f64 = 1e-10;
    const SUPPORT_EPS: f64 = 1e-12;
    const NORM_TOL: f64 = 1e-12;
}

impl Real for f32 {
    const HERMITIAN_TOL: f64 = 1e-5;
    const SUPPORT_EPS: f64 = 1e-6;
    const NORM_TOL: f64 = 1e-5;
}

/// Complex scalar over a [`Real`].
pub type C<T> = Complex<T>;

/// `x log₂ x` with the `0 log 0 = 0` convention; negative round-off is clamped.
#[inline]
pub(crate) fn xlog2x<T: Real>(x: T) -> T {
    if x <= T::zero() {
        T::zero()
    } else {
        x * x.log2()
    }
}

/// Shannon entropy in bits of a probability vector.
pub fn shannon_entropy<T: Real>(p: &[T]) -> T {
    // adding zero turns -0.0 into 0.0
    T::zero() - p.iter().map(|&x| xlog2x(x)).sum::<T>() + T::zero()
}
