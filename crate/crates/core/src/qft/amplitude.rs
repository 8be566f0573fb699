use num_complex::Complex;
use rayon::prelude::*;

use super::field::{dispersion, FieldConfig, KGrid};
use crate::error::{Error, Result};
use crate::scalar::{cis, from_usize, lit, Real};
use crate::superosc::WindowFunction;
use crate::transforms::SampledFunction;

/// Share of the k-integral carried by the outermost tenth of the grid above
/// which a profile is flagged as truncated.
pub const TAIL_WARNING: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct AmplitudeProfile<T> {
    pub probes: Vec<T>,
    pub values: Vec<Complex<T>>,
    /// `sum |eps~|/omega dk` over the outer tenth of `|k|`, relative to the whole grid.
    pub tail_fraction: T,
    pub truncation_warning: bool,
}

/// `A(L') = int dk/(2 pi) eps~(omega'(k)) e^{ikL'} / omega(k)` for every probe.
pub fn amplitude_profile_from_spectrum<T, F>(spectrum: F, probes: &[T], cfg: &FieldConfig<T>, grid: &KGrid<T>) -> Result<AmplitudeProfile<T>>
where
    T: Real,
    F: Fn(T) -> Result<Complex<T>> + Sync,
{
    if grid.dim() != 1 {
        return Err(Error::Precondition("the spin amplitude is implemented on the line".into()));
    }
    let kernel = grid
        .k()
        .par_iter()
        .zip(grid.weights())
        .map(|(&k, &w)| Ok(spectrum(cfg.omega_prime(k))? * w / dispersion(k, cfg)))
        .collect::<Result<Vec<_>>>()?;
    let edge = grid.k_max() * lit(0.9);
    let (mut tail, mut total) = (T::zero(), T::zero());
    for (c, &k) in kernel.iter().zip(grid.k()) {
        total = total + c.norm();
        if k.abs() > edge {
            tail = tail + c.norm();
        }
    }
    let tail_fraction = if total > T::zero() { tail / total } else { T::zero() };
    let values = probes
        .par_iter()
        .map(|&x| kernel.iter().zip(grid.k()).fold(Complex::new(T::zero(), T::zero()), |acc, (c, &k)| acc + c * cis(k * x)))
        .collect();
    Ok(AmplitudeProfile {
        probes: probes.to_vec(),
        values,
        tail_fraction,
        truncation_warning: tail_fraction > lit(TAIL_WARNING),
    })
}

pub fn amplitude_profile<T: Real>(w: &WindowFunction<T>, probes: &[T], cfg: &FieldConfig<T>, grid: &KGrid<T>) -> Result<AmplitudeProfile<T>> {
    amplitude_profile_from_spectrum(|wp| w.spectrum(wp), probes, cfg, grid)
}

/// First-order spin-up amplitude at probe distance `l_probe`.
pub fn amplitude_up<T: Real>(l_probe: T, w: &WindowFunction<T>, cfg: &FieldConfig<T>, grid: &KGrid<T>) -> Result<Complex<T>> {
    Ok(amplitude_profile(w, &[l_probe], cfg, grid)?.values[0])
}

/// Spectral condition for preparing a pair of mirror excitations at `+-L`:
/// `eps~_des(omega') = cos(k L)` with `omega(k) = omega' - Omega + m`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MirrorPair<T> {
    pub l: T,
    pub cfg: FieldConfig<T>,
}

pub fn desired_spectrum_mirror_pair<T: Real>(l: T, cfg: &FieldConfig<T>) -> Result<MirrorPair<T>> {
    if !(l >= T::zero()) {
        return Err(Error::Precondition("mirror distance L must be >= 0".into()));
    }
    Ok(MirrorPair { l, cfg: *cfg })
}

impl<T: Real> MirrorPair<T> {
    /// Continues to `cosh(kappa L)` below threshold.
    pub fn value(&self, omega_p: T) -> T {
        let w = omega_p - self.cfg.gap;
        let k2 = w * (w + lit::<T>(2.0) * self.cfg.mass);
        if k2 >= T::zero() {
            (k2.sqrt() * self.l).cos()
        } else {
            ((-k2).sqrt() * self.l).cosh()
        }
    }

    /// `value` times a smooth band window
    /// `W = (erf((w' + margin)/width) - erf((w' - omega_c - margin)/width)) / 2`,
    /// sampled on `[-margin - 10 width, omega_c + margin + 10 width]`.
    pub fn tapered(&self, omega_c: T, margin: T, width: T, points: usize) -> Result<SampledFunction<T>> {
        let reach = margin + lit::<T>(10.0) * width;
        let erf = |x: T| lit::<T>(libm::erf(crate::scalar::to_f64(x)));
        SampledFunction::tabulate(-reach, omega_c + reach, points, |wp| {
            let win = (erf((wp + margin) / width) - erf((wp - omega_c - margin) / width)) * lit(0.5);
            Complex::new(self.value(wp) * win, T::zero())
        })
    }
}

/// `(i + 1/2) step` offsets from `start`: cell midpoints of `[start, start + n step]`.
pub fn probe_midpoints<T: Real>(start: T, end: T, n: usize) -> Vec<T> {
    let step = (end - start) / from_usize::<T>(n);
    (0..n).map(|i| start + (from_usize::<T>(i) + lit(0.5)) * step).collect()
}

/// `|<a, b>| / (|a| |b|)` over sampled profiles.
pub fn normalized_correlation<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> T {
    let ip = a.iter().zip(b).fold(Complex::new(T::zero(), T::zero()), |acc, (x, y)| acc + x.conj() * y);
    let na = a.iter().map(|x| x.norm_sqr()).sum::<T>().sqrt();
    let nb = b.iter().map(|x| x.norm_sqr()).sum::<T>().sqrt();
    if na == T::zero() || nb == T::zero() {
        return T::zero();
    }
    ip.norm() / (na * nb)
}
