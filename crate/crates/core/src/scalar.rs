//! Real scalar abstraction. Every kernel in the crate is written against
//! [`Real`] and works on `Complex<T>` entries, so the same code runs in
//! `f32` and `f64`.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Floating-point base field: `f32` or `f64`.
///
/// The two associated constructors carry precision-dependent defaults. For
/// `f64` they are the library-wide defaults (`1e-10` working tolerance and a
/// `1e12` condition cap); `f32` gets proportionally looser values.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + LowerExp
    + Sum
    + NumAssign
    + 'static
{
    /// Base relative tolerance before dimension scaling.
    fn working_tol() -> Self;
    /// Largest accepted 1-norm condition estimate for an inversion.
    fn cond_cap() -> Self;

    #[inline]
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    fn working_tol() -> Self {
        1e-10
    }
    fn cond_cap() -> Self {
        1e12
    }
}

impl Real for f32 {
    fn working_tol() -> Self {
        1e-4
    }
    fn cond_cap() -> Self {
        1e6
    }
}

/// Complex scalar over a [`Real`] field.
pub type Cx<T> = Complex<T>;

#[inline]
pub fn cx<T: Real>(re: T, im: T) -> Cx<T> {
    Complex::new(re, im)
}

#[inline]
pub fn cxr<T: Real>(re: f64) -> Cx<T> {
    Complex::new(T::of(re), T::zero())
}

#[inline]
pub fn czero<T: Real>() -> Cx<T> {
    Complex::new(T::zero(), T::zero())
}

#[inline]
pub fn cone<T: Real>() -> Cx<T> {
    Complex::new(T::one(), T::zero())
}

/// Squared modulus without the square root.
#[inline]
pub fn abs2<T: Real>(z: Cx<T>) -> T {
    z.re * z.re + z.im * z.im
}

/// `sqrt(a^2 + b^2)` without intermediate overflow.
#[inline]
pub fn hypot<T: Real>(a: T, b: T) -> T {
    a.hypot(b)
}

/// Modulus of a complex number.
#[inline]
pub fn cabs<T: Real>(z: Cx<T>) -> T {
    z.re.hypot(z.im)
}
