use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{from_usize, lit, to_f64, Real};
use crate::specfun::bessel_k0;

/// Klein-Gordon field with a spin of gap `Omega` coupled at strength `lambda`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldConfig<T> {
    pub mass: T,
    pub gap: T,
    pub dim: usize,
    pub coupling: T,
}

impl<T: Real> FieldConfig<T> {
    pub fn new(mass: T, gap: T, dim: usize, coupling: T) -> Result<Self> {
        let cfg = Self { mass, gap, dim, coupling };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=3).contains(&self.dim) {
            return Err(Error::Precondition(format!("dim must be 1, 2 or 3, got {}", self.dim)));
        }
        if !(self.mass >= T::zero()) || !(self.gap >= T::zero()) || !(self.coupling > T::zero()) {
            return Err(Error::Precondition("need mass >= 0, gap >= 0 and coupling > 0".into()));
        }
        if self.dim == 1 && self.mass == T::zero() {
            return Err(Error::Precondition("the massless field is infrared divergent in one dimension".into()));
        }
        Ok(())
    }

    /// `lambda sup|epsilon| t0 <= 0.1`.
    pub fn is_perturbative(&self, sup_epsilon: T, t0: T) -> bool {
        self.coupling * sup_epsilon * t0 <= lit(0.1)
    }

    /// `omega' = omega(k) + Omega - m`, computed without cancellation.
    pub fn omega_prime(&self, k: T) -> T {
        k * k / (dispersion(k, self) + self.mass) + self.gap
    }

    /// Momentum with `omega'(k) = omega_p`, or zero below threshold.
    pub fn momentum_at(&self, omega_p: T) -> T {
        let w = omega_p - self.gap;
        if w <= T::zero() {
            return T::zero();
        }
        (w * (w + lit::<T>(2.0) * self.mass)).sqrt()
    }
}

/// `omega(k) = sqrt(m^2 + k^2)`.
pub fn dispersion<T: Real>(k: T, cfg: &FieldConfig<T>) -> T {
    cfg.mass.hypot(k)
}

/// Equal-time propagator `D(x, 0) = int dk e^{ikx} / (2 pi 2 omega(k)) = K0(m|x|) / (2 pi)` in one dimension.
pub fn propagator<T: Real>(separation: T, time_sep: T, cfg: &FieldConfig<T>) -> Result<Complex<T>> {
    if cfg.dim != 1 {
        return Err(Error::Precondition(format!("propagator is implemented for d = 1, got d = {}", cfg.dim)));
    }
    if time_sep != T::zero() {
        return Err(Error::Precondition("only the equal-time propagator is available".into()));
    }
    if separation == T::zero() {
        return Err(Error::Domain("propagator diverges logarithmically at zero separation".into()));
    }
    let k0 = bessel_k0(cfg.mass * separation.abs())?;
    Ok(Complex::new(k0 / (lit::<T>(2.0) * T::PI()), T::zero()))
}

/// Momentum quadrature: signed `k` with weight `dk/(2 pi)` in one dimension,
/// radial `k >= 0` with the `d^d k / (2 pi)^d` shell measure otherwise.
#[derive(Clone, Debug, PartialEq)]
pub struct KGrid<T> {
    k: Vec<T>,
    weights: Vec<T>,
    dim: usize,
}

/// Default number of momentum nodes.
pub const K_POINTS: usize = (1 << 14) + 1;

impl<T: Real> KGrid<T> {
    pub fn uniform(dim: usize, k_max: T, n: usize) -> Result<Self> {
        if n < 3 || !(k_max > T::zero()) {
            return Err(Error::Precondition("k grid needs k_max > 0 and at least 3 points".into()));
        }
        let two_pi = lit::<T>(2.0) * T::PI();
        let lo = if dim == 1 { -k_max } else { T::zero() };
        let h = (k_max - lo) / from_usize::<T>(n - 1);
        let mut k = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for i in 0..n {
            let ki = if i + 1 == n { k_max } else { lo + h * from_usize::<T>(i) };
            let end = if i == 0 || i + 1 == n { lit::<T>(0.5) } else { T::one() };
            let shell = match dim {
                1 => T::one() / two_pi,
                2 => two_pi * ki / (two_pi * two_pi),
                3 => lit::<T>(4.0) * T::PI() * ki * ki / (two_pi * two_pi * two_pi),
                _ => return Err(Error::Precondition(format!("dim must be 1, 2 or 3, got {dim}"))),
            };
            k.push(ki);
            weights.push(shell * h * end);
        }
        Ok(Self { k, weights, dim })
    }

    /// `K_POINTS` nodes up to ten times the band-edge momentum `k(omega_c)`.
    pub fn for_band(cfg: &FieldConfig<T>, omega_c: T) -> Result<Self> {
        let kc = cfg.momentum_at(omega_c);
        if !(kc > T::zero()) {
            return Err(Error::Precondition(format!("omega_c = {} lies below the gap", to_f64(omega_c))));
        }
        Self::uniform(cfg.dim, lit::<T>(10.0) * kc, K_POINTS)
    }

    pub fn k(&self) -> &[T] {
        &self.k
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.k.len()
    }

    pub fn is_empty(&self) -> bool {
        self.k.is_empty()
    }

    pub fn k_max(&self) -> T {
        self.k[self.k.len() - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(m: f64) -> FieldConfig<f64> {
        FieldConfig::new(m, 0.0, 1, 0.01).unwrap()
    }

    #[test]
    fn dispersion_examples() {
        assert_eq!(dispersion(0.0, &cfg(1.0)), 1.0);
        assert_eq!(dispersion(3.0, &cfg(4.0)), 5.0);
        let w = dispersion(1e6, &cfg(1.0));
        assert!((w - 1e6).abs() / 1e6 < 1e-12);
    }

    #[test]
    fn massless_line_rejected() {
        assert!(FieldConfig::new(0.0, 0.0, 1, 1.0).is_err());
        assert!(FieldConfig::new(0.0, 0.0, 3, 1.0).is_ok());
        assert!(FieldConfig::new(1.0, 0.0, 4, 1.0).is_err());
    }

    #[test]
    fn propagator_examples() {
        let d = propagator(1.0, 0.0, &cfg(1.0)).unwrap();
        assert!((d.re - 0.067_008).abs() < 1e-6);
        let d2 = propagator(0.5, 0.0, &cfg(2.0)).unwrap();
        assert!((d2.re - d.re).abs() < 1e-15);
        assert!(propagator(0.0, 0.0, &cfg(1.0)).is_err());
        assert!(propagator(1.0, 0.5, &cfg(1.0)).is_err());
        let mut last = d.re;
        for x in [2.0, 4.0, 8.0, 16.0] {
            let v = propagator(x, 0.0, &cfg(1.0)).unwrap().re;
            assert!(v < last && v > 0.0);
            last = v;
        }
    }

    #[test]
    fn omega_prime_round_trip() {
        let c = FieldConfig::new(1.0, 0.1, 1, 0.01).unwrap();
        for k in [0.0f64, 0.3, 5.0, 400.0] {
            let wp = c.omega_prime(k);
            assert!((wp - (dispersion(k, &c) + 0.1 - 1.0)).abs() < 1e-12 * wp.max(1.0));
            assert!((c.momentum_at(wp) - k).abs() < 1e-9 * k.max(1.0));
        }
    }

    #[test]
    fn grid_measure() {
        // int d^3k/(2 pi)^3 over |k| <= 1 is 1/(6 pi^2)
        let g = KGrid::<f64>::uniform(3, 1.0, 2001).unwrap();
        let vol: f64 = g.weights().iter().sum();
        assert!((vol - 1.0 / (6.0 * std::f64::consts::PI.powi(2))).abs() < 1e-6);
        let g1 = KGrid::<f64>::uniform(1, 1.0, 2001).unwrap();
        assert!((g1.weights().iter().sum::<f64>() - 1.0 / std::f64::consts::PI).abs() < 1e-12);
    }
}
