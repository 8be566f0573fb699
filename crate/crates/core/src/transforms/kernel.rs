//! Compactly supported polynomial smoothing kernels and window convolution.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{cis, from_usize, lit, to_f64, Real};
use crate::specfun::sph_bessel;
use crate::superosc::WindowFunction;

pub const MAX_KERNEL_ORDER: usize = 20;

/// `h(s) ∝ (1 - u^2)^n` with `u = (2s + tau)/tau`, supported on `[-tau, 0]`
/// and normalised to unit mass.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SmoothingKernel<T> {
    width: T,
    order: usize,
}

impl<T: Real> SmoothingKernel<T> {
    pub fn new(width: T, order: usize) -> Result<Self> {
        if !(width > T::zero()) || !width.is_finite() {
            return Err(Error::Precondition(format!("kernel width must be > 0, got {}", to_f64(width))));
        }
        if order > MAX_KERNEL_ORDER {
            return Err(Error::Precondition(format!("kernel order {order} exceeds {MAX_KERNEL_ORDER}")));
        }
        Ok(Self { width, order })
    }

    pub fn width(&self) -> T {
        self.width
    }

    /// The exponent `n`; the kernel is `n - 1` times continuously differentiable.
    pub fn order(&self) -> usize {
        self.order
    }

    fn norm(&self) -> T {
        // int_{-1}^{1} (1 - u^2)^n du = 2 (2n)!! / (2n+1)!!
        let mut r = lit::<T>(2.0);
        for k in 1..=self.order {
            r = r * from_usize::<T>(2 * k) / from_usize::<T>(2 * k + 1);
        }
        r * self.width * lit(0.5)
    }

    pub fn value(&self, s: T) -> T {
        if s < -self.width || s > T::zero() {
            return T::zero();
        }
        let u = (lit::<T>(2.0) * s + self.width) / self.width;
        (T::one() - u * u).max(T::zero()).powi(self.order as i32) / self.norm()
    }

    /// `int h(s) e^{i omega s} ds = e^{-i omega tau/2} (2n+1)!! j_n(x) / x^n`, `x = omega tau / 2`.
    pub fn transform(&self, omega: T) -> Result<Complex<T>> {
        let x = (omega * self.width * lit(0.5)).abs();
        Ok(cis(-omega * self.width * lit(0.5)) * reduced_sph_bessel(self.order, x)?)
    }
}

/// `(2n+1)!! j_n(x) / x^n`, equal to 1 at the origin.
pub(crate) fn reduced_sph_bessel<T: Real>(n: usize, x: T) -> Result<T> {
    if x < T::one() {
        let q = -x * x * lit::<T>(0.5);
        let mut term = T::one();
        let mut sum = T::one();
        for k in 1..60 {
            term = term * q / (from_usize::<T>(k) * from_usize::<T>(2 * n + 2 * k + 1));
            sum = sum + term;
            if term.abs() <= T::epsilon() * sum.abs() {
                break;
            }
        }
        return Ok(sum);
    }
    let mut r = sph_bessel(n, x)?;
    for k in 1..=n {
        r = r * from_usize::<T>(2 * k + 1) / x;
    }
    Ok(r)
}

/// Smooths `w` with `h`. The kernel must be narrow, `tau <= t0 / 20`.
pub fn convolve<T: Real>(w: &WindowFunction<T>, h: &SmoothingKernel<T>) -> Result<WindowFunction<T>> {
    let limit = w.t0() / lit(20.0);
    if h.width() > limit {
        return Err(Error::KernelTooWide { width: to_f64(h.width()), limit: to_f64(limit) });
    }
    w.clone().with_kernel(*h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transforms::{integrate_real, QuadOptions};

    #[test]
    fn unit_mass() {
        for n in 0..6 {
            let h = SmoothingKernel::new(0.05, n).unwrap();
            let q = integrate_real(|s: f64| h.value(s), -0.05, 0.0, &QuadOptions::with_tol(1e-14)).unwrap();
            assert!((q.value.re - 1.0).abs() < 1e-12, "n={n}");
            assert!((h.transform(0.0).unwrap() - 1.0).norm() < 1e-15);
        }
    }

    #[test]
    fn transform_matches_quadrature() {
        let h = SmoothingKernel::new(0.2, 2).unwrap();
        for &w in &[0.5, 7.0, 10.0, 60.0, 400.0] {
            let opts = QuadOptions::with_tol(1e-14).rate(w);
            let q = crate::transforms::integrate(|s: f64| cis(w * s) * h.value(s), -0.2, 0.0, &opts).unwrap();
            assert!((q.value - h.transform(w).unwrap()).norm() < 1e-12, "w={w}");
        }
    }

    #[test]
    fn rejects_bad_kernels() {
        assert!(SmoothingKernel::new(0.0, 2).is_err());
        assert!(SmoothingKernel::new(0.1, 21).is_err());
    }
}
