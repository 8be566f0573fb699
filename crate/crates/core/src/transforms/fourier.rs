use num_complex::Complex;
use rayon::prelude::*;

use super::quad::{integrate, QuadOptions};
use super::sampled::SampledFunction;
use crate::error::Result;
use crate::scalar::{cis, lit, Real};

/// A complex signal of compact support in time.
pub trait TimeSignal<T: Real>: Sync {
    /// Closed interval outside of which the signal vanishes.
    fn support(&self) -> (T, T);

    fn value(&self, t: T) -> Result<Complex<T>>;

    /// Largest rate of phase advance of the signal itself, radians per unit time.
    fn phase_rate(&self) -> T {
        T::zero()
    }

    /// Points in the support where the signal is not smooth.
    fn breakpoints(&self) -> Vec<T> {
        Vec::new()
    }

    /// `value(t(th)) dt/dth` under `t = c - r cos(th)` with `c, r` the
    /// midpoint and half-width of the support. Signals with inverse square
    /// root endpoint singularities return `Some` so the transform never
    /// samples near the singular ends in the original variable.
    fn regularized(&self, _theta: T) -> Option<Result<Complex<T>>> {
        None
    }
}

/// `int s(t) e^{i omega t} dt` by adaptive quadrature.
pub fn fourier_at<T: Real, S: TimeSignal<T> + ?Sized>(s: &S, omega: T, abs_tol: T) -> Result<Complex<T>> {
    let (a, b) = s.support();
    let c = (a + b) * lit(0.5);
    let r = (b - a) * lit(0.5);
    let rate = omega.abs() + s.phase_rate();
    if s.regularized(T::FRAC_PI_2()).is_some() {
        let err = std::cell::Cell::new(None);
        let opts = QuadOptions::with_tol(abs_tol).rate(rate * r);
        let q = integrate(
            |th: T| match s.regularized(th).expect("regularized form available") {
                Ok(v) => v * cis(omega * (c - r * th.cos())),
                Err(e) => {
                    err.set(Some(e));
                    Complex::new(T::zero(), T::zero())
                }
            },
            T::zero(),
            T::PI(),
            &opts,
        );
        if let Some(e) = err.take() {
            return Err(e);
        }
        return Ok(q?.value);
    }
    let err = std::cell::Cell::new(None);
    let opts = QuadOptions::with_tol(abs_tol).rate(rate).breaks(s.breakpoints());
    let q = integrate(
        |t: T| match s.value(t) {
            Ok(v) => v * cis(omega * t),
            Err(e) => {
                err.set(Some(e));
                Complex::new(T::zero(), T::zero())
            }
        },
        a,
        b,
        &opts,
    );
    if let Some(e) = err.take() {
        return Err(e);
    }
    Ok(q?.value)
}

/// Transform sampled on `omega_grid`; grid points are evaluated in parallel.
pub fn fourier_time_to_freq<T: Real, S: TimeSignal<T> + ?Sized>(
    s: &S,
    omega_grid: &[T],
    abs_tol: T,
) -> Result<SampledFunction<T>> {
    let values = omega_grid
        .par_iter()
        .map(|&w| fourier_at(s, w, abs_tol))
        .collect::<Result<Vec<_>>>()?;
    SampledFunction::new(omega_grid.to_vec(), values)
}

impl<T: Real> TimeSignal<T> for SampledFunction<T> {
    fn support(&self) -> (T, T) {
        (self.start(), self.end())
    }

    fn value(&self, t: T) -> Result<Complex<T>> {
        Ok(self.interpolate(t))
    }

    fn breakpoints(&self) -> Vec<T> {
        self.grid().to_vec()
    }
}
