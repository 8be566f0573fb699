//! Scalar abstraction shared by every numerical module.
//!
//! All of the math in this crate is written against [`Real`], so the same
//! code runs in `f64` (the default used by the CLI) and `f32`.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar usable throughout the crate.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Sum + Send + Sync + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an `f64` literal into the working scalar.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in scalar type")
}

/// Converts an index or count into the working scalar.
#[inline]
pub fn from_usize<T: Real>(n: usize) -> T {
    T::from_usize(n).expect("count representable in scalar type")
}

#[inline]
pub fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `e^{i phi}`.
#[inline]
pub fn cis<T: Real>(phi: T) -> Complex<T> {
    Complex::new(phi.cos(), phi.sin())
}

#[inline]
pub fn is_finite_c<T: Real>(z: Complex<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Complex number stored as `mantissa * e^{log_scale}`.
///
/// Superoscillatory spectra swing over thousands of e-folds between the
/// growth region and the physical band; this keeps them representable.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledComplex<T> {
    pub mantissa: Complex<T>,
    pub log_scale: T,
}

impl<T: Real> ScaledComplex<T> {
    pub fn new(mantissa: Complex<T>, log_scale: T) -> Self {
        Self { mantissa, log_scale }
    }

    pub fn unscaled(z: Complex<T>) -> Self {
        Self::new(z, T::zero())
    }

    /// Natural log of the modulus.
    pub fn ln_abs(&self) -> T {
        self.mantissa.norm().ln() + self.log_scale
    }

    pub fn scale(self, factor: Complex<T>) -> Self {
        Self::new(self.mantissa * factor, self.log_scale)
    }

    /// Brings the mantissa back to unit scale, `None` on overflow.
    pub fn to_complex(&self) -> Option<Complex<T>> {
        if self.mantissa.norm() == T::zero() {
            return Some(Complex::new(T::zero(), T::zero()));
        }
        let z = self.mantissa * self.log_scale.exp();
        is_finite_c(z).then_some(z)
    }

    /// Sum expressed in the larger of the two scales.
    pub fn add(&self, other: &Self) -> Self {
        if self.mantissa.norm() == T::zero() {
            return *other;
        }
        if other.mantissa.norm() == T::zero() {
            return *self;
        }
        let s = self.log_scale.max(other.log_scale);
        let m = self.mantissa * (self.log_scale - s).exp() + other.mantissa * (other.log_scale - s).exp();
        Self::new(m, s)
    }

    /// `|a - b| / |b|` computed in the common scale of the two operands.
    pub fn relative_difference(&self, reference: &Self) -> T {
        let s = if self.log_scale > reference.log_scale { self.log_scale } else { reference.log_scale };
        let a = self.mantissa * (self.log_scale - s).exp();
        let b = reference.mantissa * (reference.log_scale - s).exp();
        (a - b).norm() / b.norm()
    }

    /// Difference measured against an explicit reference magnitude `ln_ref`.
    pub fn difference_against(&self, other: &Self, ln_ref: T) -> T {
        let a = self.mantissa * (self.log_scale - ln_ref).exp();
        let b = other.mantissa * (other.log_scale - ln_ref).exp();
        (a - b).norm()
    }
}
