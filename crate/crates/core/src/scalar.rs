//! Floating-point scalar abstraction for the simulation core.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Complex number over the simulation scalar.
pub type Cplx<T> = Complex<T>;

/// Scalar type the whole core is generic over: f32 or f64.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + Sum<Self>
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal into the scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    #[inline]
    fn two() -> Self {
        Self::one() + Self::one()
    }

    #[inline]
    fn half() -> Self {
        Self::lit(0.5)
    }
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + NumAssign
        + Sum<T>
        + Debug
        + Display
        + LowerExp
        + Send
        + Sync
        + 'static
{
}

/// `i` as a complex constant.
#[inline]
pub fn imag_unit<T: Real>() -> Cplx<T> {
    Cplx::new(T::zero(), T::one())
}

/// Real scalar promoted to a complex value.
#[inline]
pub fn cplx<T: Real>(re: T) -> Cplx<T> {
    Cplx::new(re, T::zero())
}
