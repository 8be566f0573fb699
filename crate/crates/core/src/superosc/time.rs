//! Time-domain form of the superoscillatory block on its support `[-t0, 0]`.

use num_complex::Complex;

use super::params::SuperoscParams;
use crate::error::{Error, Result};
use crate::scalar::{cis, lit, to_f64, Real, ScaledComplex};

/// Distance from either endpoint, relative to `t0`, inside which evaluation is refused.
pub const ENDPOINT_GUARD: f64 = 1e-9;

/// `Delta / (delta sqrt(2 pi) t0 s) e^{i b u cosh A} 2 cosh(b s sinh A)` with
/// `u = (2t + t0)/t0`, `s = sqrt(1 - u^2)`, `b = 1/delta^2`. The two branches
/// sum to the hyperbolic cosine; its growth goes to the log scale.
pub(crate) fn time_domain_raw<T: Real>(p: &SuperoscParams<T>, t: T) -> ScaledComplex<T> {
    let t0 = p.t0();
    if t < -t0 || t > T::zero() {
        return ScaledComplex::unscaled(Complex::new(T::zero(), T::zero()));
    }
    let b = p.inv_delta_sq();
    let u = (lit::<T>(2.0) * t + t0) / t0;
    // t0 s = sqrt(t0^2 - (2t + t0)^2) without the cancellation near the ends
    let t0s = (-lit::<T>(4.0) * t * (t + t0)).sqrt();
    let s = t0s / t0;
    let g = b * s * p.a().sinh();
    let amp = p.amplitude() / (p.delta() * (lit::<T>(2.0) * T::PI()).sqrt() * t0s);
    ScaledComplex::new(cis(b * u * p.a().cosh()) * (amp * (T::one() + (-lit::<T>(2.0) * g).exp())), g)
}

/// `epsilon(t(th)) dt/dth` with `t = -t0/2 - (t0/2) cos th`, finite on `[0, pi]`.
pub(crate) fn time_domain_regularized<T: Real>(p: &SuperoscParams<T>, theta: T) -> ScaledComplex<T> {
    let b = p.inv_delta_sq();
    let g = b * theta.sin() * p.a().sinh();
    let amp = p.amplitude() / (lit::<T>(2.0) * p.delta() * (lit::<T>(2.0) * T::PI()).sqrt());
    ScaledComplex::new(cis(-b * theta.cos() * p.a().cosh()) * (amp * (T::one() + (-lit::<T>(2.0) * g).exp())), g)
}

fn guard<T: Real>(p: &SuperoscParams<T>, t: T) -> Result<()> {
    let t0 = p.t0();
    let distance = (t + t0).abs().min(t.abs());
    if t >= -t0 && t <= T::zero() && distance < lit::<T>(ENDPOINT_GUARD) * t0 {
        return Err(Error::EndpointSingularity { t: to_f64(t), distance: to_f64(distance) });
    }
    Ok(())
}

/// Scaled time-domain value; exactly zero outside `[-t0, 0]`.
pub fn time_domain_scaled<T: Real>(p: &SuperoscParams<T>, t: T) -> Result<ScaledComplex<T>> {
    guard(p, t)?;
    Ok(time_domain_raw(p, t))
}

pub fn eval_time_domain<T: Real>(p: &SuperoscParams<T>, t: T) -> Result<Complex<T>> {
    let s = time_domain_scaled(p, t)?;
    s.to_complex().ok_or(Error::Overflow { log_magnitude: to_f64(s.ln_abs()) })
}
