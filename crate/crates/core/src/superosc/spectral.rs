//! The superoscillatory spectrum as an alpha-integral and in closed form.

use num_complex::Complex;

use super::params::SuperoscParams;
use crate::error::{Error, Result};
use crate::scalar::{cis, lit, to_f64, Real, ScaledComplex};
use crate::specfun::j0_scaled_unguarded;
use crate::transforms::{integrate, QuadOptions};

/// `p = a + b e^{-A}` and `q = a + b e^{A}` with `a = omega' t0 / 2`,
/// `b = 1/delta^2`; the Bessel argument is `sqrt(p q)`.
fn pq<T: Real>(p: &SuperoscParams<T>, omega: T) -> (T, T, T) {
    let a = omega * p.t0() * lit(0.5);
    let b = p.inv_delta_sq();
    (a, a + b * (-p.a()).exp(), a + b * p.a().exp())
}

/// `Delta sqrt(pi) / (sqrt 2 delta) e^{-i omega' t0/2} J0(...)` in scaled form.
pub fn spectral_closed_scaled<T: Real>(p: &SuperoscParams<T>, omega: T) -> Result<ScaledComplex<T>> {
    let (a, lo, hi) = pq(p, omega);
    let prod = lo * hi;
    let z = if prod >= T::zero() {
        Complex::new(prod.sqrt(), T::zero())
    } else {
        Complex::new(T::zero(), (-prod).sqrt())
    };
    let pref = p.amplitude() * (T::PI() / lit(2.0)).sqrt() / p.delta();
    Ok(j0_scaled_unguarded(z)?.scale(cis(-a) * pref))
}

pub fn eval_spectral_closed<T: Real>(p: &SuperoscParams<T>, omega: T) -> Result<Complex<T>> {
    let s = spectral_closed_scaled(p, omega)?;
    s.to_complex().ok_or(Error::Overflow { log_magnitude: to_f64(s.ln_abs()) })
}

/// Adaptive quadrature of
/// `Delta/(2 delta sqrt(2 pi)) int_0^{2 pi} e^{i omega' t0 (cos al - 1)/2} e^{(i/delta^2) cos(al - i A)} d al`.
///
/// The exponent equals `i (q e^{i al} + p e^{-i al}) / 2 - i a`; the
/// integrand is entire and periodic, so the contour is moved to
/// `al + i beta` with `e^{2 beta} = |q/p|`. There both exponentials have
/// modulus `c = sqrt|p q|` and the integrand is either a pure phase or a
/// real exponential whose peak `e^c` is carried in the log scale.
pub fn spectral_integral_scaled<T: Real>(p: &SuperoscParams<T>, omega: T, abs_tol: T) -> Result<ScaledComplex<T>> {
    if p.delta() < lit(1e-3) {
        return Err(Error::Precondition(format!("delta = {} below the quadrature guard 1e-3", to_f64(p.delta()))));
    }
    let (a, lo, hi) = pq(p, omega);
    let pref = p.amplitude() / (lit::<T>(2.0) * p.delta() * (lit::<T>(2.0) * T::PI()).sqrt());
    let phase = cis(-a) * pref;
    let two_pi = lit::<T>(2.0) * T::PI();
    if lo == T::zero() || hi == T::zero() {
        // mean of an entire function over the circle
        return Ok(ScaledComplex::unscaled(phase * two_pi));
    }
    let c = (lo * hi).abs().sqrt();
    let (sq, sp) = (hi.signum(), lo.signum());
    let shift = if sq == sp { T::zero() } else { c };
    let half = lit::<T>(0.5);
    let i = Complex::new(T::zero(), T::one());
    let integrand = |al: T| {
        let e = i * (cis(al) * sq + cis(-al) * sp) * (c * half) - shift;
        e.exp()
    };
    let opts = QuadOptions::with_tol(abs_tol).rate(c);
    let q = integrate(integrand, T::zero(), two_pi, &opts)?;
    Ok(ScaledComplex::new(q.value * phase, shift))
}

/// Default tolerance: `1e-13` on the unit-peak integrand.
pub fn eval_spectral_integral<T: Real>(p: &SuperoscParams<T>, omega: T) -> Result<Complex<T>> {
    let s = spectral_integral_scaled(p, omega, lit(1e-13))?;
    s.to_complex().ok_or(Error::Overflow { log_magnitude: to_f64(s.ln_abs()) })
}

/// Distance between two spectra relative to the local Bessel envelope
/// `pref sqrt(2 / (pi max(|z|, 1)))`, or to `|reference|` when larger.
/// Plain relative error is meaningless at the zeros of `J0`.
pub fn envelope_relative_error<T: Real>(
    p: &SuperoscParams<T>,
    omega: T,
    value: &ScaledComplex<T>,
    reference: &ScaledComplex<T>,
) -> T {
    let (_, lo, hi) = pq(p, omega);
    let z = (lo * hi).abs().sqrt().max(T::one());
    let pref = p.amplitude() * (T::PI() / lit(2.0)).sqrt() / p.delta();
    let envelope = pref * (lit::<T>(2.0) / (T::PI() * z)).sqrt();
    // in the growth region the envelope is the exponential itself
    let ln_ref = reference.ln_abs().max(envelope.ln());
    value.difference_against(reference, ln_ref)
}
