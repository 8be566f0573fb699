//! Spectral targets for radially symmetric and `Y_lm` shell sources.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::qft::state::radial_transform;
use crate::qft::FieldConfig;
use crate::scalar::{lit, to_f64, Real};
use crate::specfun::{radial_kernel, sph_bessel, sph_bessel_first_zero};
use crate::transforms::kernel::reduced_sph_bessel;
use crate::transforms::{uniform_grid, SampledFunction};

/// Below this `|j_l(k a0) / (k a0)^l|`, in units of its value at the origin, the shell ratio is refused.
pub const ZERO_GUARD: f64 = 1e-12;

/// Radial weight `f(r)` of a spherically symmetric spin distribution.
#[derive(Clone, Debug, PartialEq)]
pub enum RadialWeight<T> {
    /// `weight * delta(r - radius)`.
    Shell { radius: T, weight: T },
    Profile(SampledFunction<T>),
}

/// Uniform momenta on `[0, k(omega_c)]` and their `omega'`.
fn band<T: Real>(cfg: &FieldConfig<T>, omega_c: T, points: usize) -> Result<(Vec<T>, Vec<T>)> {
    let k_c = cfg.momentum_at(omega_c);
    if !(k_c > T::zero()) {
        return Err(Error::Precondition(format!("band [0, {}] lies below the gap", to_f64(omega_c))));
    }
    let ks = uniform_grid(T::zero(), k_c, points)?;
    let om = ks.iter().map(|&k| cfg.omega_prime(k)).collect();
    Ok((ks, om))
}

/// `eps~_des(omega') = j_l(k R) / j_l(k a0)` for `omega'` in the band, as
/// samples over `omega'`. The `k = 0` point carries the limit `(R/a0)^l`.
pub fn ylm_shell_condition<T: Real>(
    l: usize,
    a0: T,
    r: T,
    t0: T,
    cfg: &FieldConfig<T>,
    omega_c: T,
    points: usize,
) -> Result<SampledFunction<T>> {
    if cfg.dim != 3 {
        return Err(Error::Precondition(format!("shell condition needs d = 3, got {}", cfg.dim)));
    }
    if !(a0 > T::zero()) {
        return Err(Error::Precondition("shell radius a0 must be > 0".into()));
    }
    if !(r > t0 + a0) {
        return Err(Error::Precondition(format!("R = {} must exceed t0 + a0 = {}", to_f64(r), to_f64(t0 + a0))));
    }
    let (ks, om) = band(cfg, omega_c, points)?;
    let z = sph_bessel_first_zero::<T>(l)?;
    let k_c = ks[ks.len() - 1];
    if !(a0 * k_c < z) {
        return Err(Error::Precondition(format!("a0 k_c = {} reaches the first zero {} of j_{l}", to_f64(a0 * k_c), to_f64(z))));
    }
    let lever = (r / a0).powi(l as i32);
    let values = ks
        .par_iter()
        .map(|&k| {
            let den = reduced_sph_bessel(l, k * a0)?;
            if den.abs() < lit(ZERO_GUARD) {
                return Err(Error::ZeroGuard { k: to_f64(k), value: to_f64(sph_bessel(l, k * a0)?) });
            }
            Ok(Complex::new(lever * reduced_sph_bessel(l, k * r)? / den, T::zero()))
        })
        .collect::<Result<Vec<_>>>()?;
    SampledFunction::new(om, values)
}

/// `eps~_des(omega'(k)) = int dr f(r) k (2 pi r/k)^{d/2} J_{(d-2)/2}(k r)` on the
/// band, `d = cfg.dim`.
pub fn radial_weight_to_spectral<T: Real>(
    f: &RadialWeight<T>,
    cfg: &FieldConfig<T>,
    omega_c: T,
    points: usize,
) -> Result<SampledFunction<T>> {
    let (ks, om) = band(cfg, omega_c, points)?;
    let values = ks
        .par_iter()
        .map(|&k| match f {
            RadialWeight::Shell { radius, weight } => {
                Ok(Complex::new(*weight * radial_kernel(cfg.dim, k, *radius)?, T::zero()))
            }
            RadialWeight::Profile(p) => radial_transform(p, k, cfg.dim),
        })
        .collect::<Result<Vec<_>>>()?;
    SampledFunction::new(om, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg3() -> FieldConfig<f64> {
        FieldConfig::new(1.0, 0.0, 3, 0.01).unwrap()
    }

    #[test]
    fn identity_shell() {
        let s = ylm_shell_condition(0, 2.0, 2.0 + 1e-12, 0.0, &cfg3(), 0.5, 64).unwrap();
        assert!(s.values().iter().all(|v| (v.re - 1.0).abs() < 1e-10));
    }

    #[test]
    fn point_source_limit() {
        let r = 3.0;
        let s = ylm_shell_condition(0, 1e-6, r, 1.0, &cfg3(), 2.0, 33).unwrap();
        let cfg = cfg3();
        for (&om, v) in s.grid().iter().zip(s.values()) {
            let k = cfg.momentum_at(om);
            let want = if k == 0.0 { 1.0 } else { (k * r).sin() / (k * r) };
            assert!((v.re - want).abs() < 1e-10, "{om} {v} {want}");
        }
    }

    #[test]
    fn l1_matches_sph_bessel() {
        let cfg = cfg3();
        let a0 = 1.0;
        let z: f64 = sph_bessel_first_zero(1).unwrap();
        let k_c = 0.9 * z / a0;
        let omega_c = cfg.omega_prime(k_c);
        let s = ylm_shell_condition(1, a0, 3.0 * a0, 1.0, &cfg, omega_c, 32).unwrap();
        assert_eq!(s.len(), 32);
        for (i, (&om, v)) in s.grid().iter().zip(s.values()).enumerate().skip(1) {
            let k = cfg.momentum_at(om);
            let want = sph_bessel(1, k * 3.0).unwrap() / sph_bessel(1, k * a0).unwrap();
            assert!((v.re - want).abs() < 1e-9 * want.abs().max(1.0), "{i}");
            assert!(sph_bessel(1, k * a0).unwrap().abs() >= 1e-12);
        }
        assert!((s.values()[0].re - 3.0).abs() < 1e-12);
    }

    #[test]
    fn preconditions() {
        let cfg = cfg3();
        assert!(ylm_shell_condition(0, 1.0, 1.5, 1.0, &cfg, 1.0, 8).is_err());
        assert!(ylm_shell_condition(0, 1.0, 5.0, 1.0, &cfg, 10.0, 8).is_err());
        let d1 = FieldConfig::<f64>::new(1.0, 0.0, 1, 0.01).unwrap();
        assert!(ylm_shell_condition(0, 1.0, 5.0, 1.0, &d1, 1.0, 8).is_err());
    }

    #[test]
    fn shells_recover_known_conditions() {
        let d1 = FieldConfig::<f64>::new(1.0, 0.0, 1, 0.01).unwrap();
        let s = radial_weight_to_spectral(&RadialWeight::Shell { radius: 2.0, weight: 1.0 }, &d1, 5.0, 41).unwrap();
        for (&om, v) in s.grid().iter().zip(s.values()) {
            assert!((v.re - 2.0 * (d1.momentum_at(om) * 2.0).cos()).abs() < 1e-12);
        }
        let cfg = cfg3();
        let s = radial_weight_to_spectral(&RadialWeight::Shell { radius: 1.5, weight: 1.0 }, &cfg, 5.0, 41).unwrap();
        let shell = ylm_shell_condition(0, 1e-8, 1.5, 1.0, &cfg, 5.0, 41).unwrap();
        for (v, w) in s.values().iter().zip(shell.values()) {
            assert!((v.re / (4.0 * std::f64::consts::PI * 1.5 * 1.5) - w.re).abs() < 1e-10);
        }
    }

    #[test]
    fn zero_profile_maps_to_zero() {
        let cfg = cfg3();
        let f = SampledFunction::tabulate(0.0, 2.0, 21, |_: f64| Complex::new(0.0, 0.0)).unwrap();
        let s = radial_weight_to_spectral(&RadialWeight::Profile(f), &cfg, 2.0, 9).unwrap();
        assert!(s.values().iter().all(|v| v.norm() == 0.0));
    }
}
