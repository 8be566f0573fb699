use num_complex::Complex;
use rayon::prelude::*;
use serde::Serialize;

use super::window::WindowFunction;
use crate::error::{Error, Result};
use crate::scalar::{from_usize, lit, Real};
use crate::transforms::{desa_frequency, local_frequency, tail_exponent, uniform_grid, SampledFunction};

/// Growth counts once `|eps~|` exceeds this multiple of its in-band median.
pub const GROWTH_FACTOR: f64 = 10.0;
/// Relative margin by which the local frequency must beat `t0`.
pub const SUPEROSC_MARGIN: f64 = 0.01;
const TAIL_BINS: usize = 24;
const DESA_HALF_WINDOW: usize = 4;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuperoscillationReport<T> {
    pub omega_c: T,
    /// Most negative `omega'` reached before `|eps~|` first exceeds the growth threshold, scanning down from 0.
    pub growth_onset: Option<T>,
    pub growth_onset_estimate: Option<T>,
    pub domain_median: T,
    /// Largest `|t'|` the spectrum's phase points to on `[0, omega_c]`.
    pub max_local_frequency: T,
    pub band_limit: T,
    pub superoscillatory: bool,
    /// `p` in `|eps~| ~ omega'^{-p}`, fitted on `tail_window`.
    pub tail_exponent: T,
    pub tail_window: (T, T),
    /// The spectrum is `e^{-i omega' t0/2}` times a real function.
    pub real_proportional: bool,
}

/// Uniform spectral samples on `[lo, hi]` resolving a phase slope of `reach`.
fn resolved_grid<T: Real>(w: &WindowFunction<T>, lo: T, hi: T, min_points: usize) -> Result<Vec<T>> {
    let reach = w.reach() + w.kernel().map_or(T::zero(), |h| h.width());
    let step = T::FRAC_PI_4() / reach;
    let n = (crate::scalar::to_f64((hi - lo) / step).ceil() as usize + 1).max(min_points);
    uniform_grid(lo, hi, n)
}

pub fn superoscillation_report<T: Real>(w: &WindowFunction<T>) -> Result<SuperoscillationReport<T>> {
    let t0 = w.t0();
    let omega_c = w.omega_c().unwrap_or(lit::<T>(10.0) / t0);

    let band = resolved_grid(w, T::zero(), omega_c, 2048)?;
    let spec = w.spectral_samples(&band)?;
    let mut mags: Vec<T> = spec.values().iter().map(|z| z.norm()).collect();
    mags.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    let domain_median = mags[mags.len() / 2];

    let demod = spec.map(|om, z| z * Complex::new(T::zero(), om * t0 * lit(0.5)).exp())?;
    let peak = mags[mags.len() - 1];
    let real_proportional = demod.values().iter().all(|z| z.im.abs() <= lit::<T>(1e-8) * peak);
    let max_local_frequency = if real_proportional {
        let re: Vec<T> = demod.values().iter().map(|z| z.re).collect();
        let step = band[1] - band[0];
        let nu = desa_frequency(&re, step, DESA_HALF_WINDOW)?.into_iter().fold(T::zero(), T::max);
        t0 * lit(0.5) + nu
    } else {
        local_frequency(&spec)?.into_iter().fold(T::zero(), |m, f| m.max(f.abs()))
    };

    let pad = w.omega_pad();
    let below = resolved_grid(w, -pad, T::zero(), 4001)?;
    let threshold = domain_median * lit(GROWTH_FACTOR);
    let ln_threshold = threshold.ln();
    let ln_below = below
        .par_iter()
        .map(|&om| w.spectrum_scaled(om).map(|s| s.ln_abs()))
        .collect::<Result<Vec<T>>>()?;
    let growth_onset = (0..below.len()).rev().find(|&i| ln_below[i] > ln_threshold).map(|i| below[i]);

    let start = omega_c.max(w.tail_onset());
    let (lo, hi) = (lit::<T>(10.0) * start, lit::<T>(1000.0) * start);
    let period = lit::<T>(4.0) * T::PI() / t0;
    let tail = tail_exponent(|om| w.spectrum_scaled(om).map(|s| s.ln_abs()), lo, hi, period, TAIL_BINS)?;

    Ok(SuperoscillationReport {
        omega_c,
        growth_onset,
        growth_onset_estimate: w.growth_onset_estimate(),
        domain_median,
        max_local_frequency,
        band_limit: t0,
        superoscillatory: max_local_frequency > t0 * (T::one() + lit(SUPEROSC_MARGIN)),
        tail_exponent: tail,
        tail_window: (lo, hi),
        real_proportional,
    })
}

/// One row of a plot-ready spectral table.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectralRow<T> {
    pub omega: T,
    pub log_abs: T,
    pub local_frequency: T,
}

/// `(omega', ln|eps~|, d arg eps~ / d omega')` on `[-omega_pad, 10 omega_c]`.
/// The phase derivative is taken pairwise, so sign flips of a real factor
/// and steps within the growth region never raise aliasing errors.
pub fn spectral_table<T: Real>(w: &WindowFunction<T>, points: usize) -> Result<Vec<SpectralRow<T>>> {
    let omega_c = w.omega_c().unwrap_or(lit::<T>(10.0) / w.t0());
    let grid = uniform_grid(-w.omega_pad(), lit::<T>(10.0) * omega_c, points)?;
    let scaled = grid.par_iter().map(|&om| w.spectrum_scaled(om)).collect::<Result<Vec<_>>>()?;
    let units: Vec<Complex<T>> = scaled
        .iter()
        .map(|s| {
            let n = s.mantissa.norm();
            if n > T::zero() { s.mantissa / n } else { Complex::new(T::one(), T::zero()) }
        })
        .collect();
    let unit = SampledFunction::new(grid.clone(), units)?;
    let freq = match local_frequency(&unit) {
        Ok(f) => f,
        Err(Error::Aliasing { .. }) => pairwise_frequency(&unit),
        Err(e) => return Err(e),
    };
    Ok(grid
        .iter()
        .zip(&scaled)
        .zip(freq)
        .map(|((&omega, s), local_frequency)| SpectralRow { omega, log_abs: s.ln_abs(), local_frequency })
        .collect())
}

fn pairwise_frequency<T: Real>(s: &SampledFunction<T>) -> Vec<T> {
    let (x, v) = (s.grid(), s.values());
    let n = x.len();
    let steps: Vec<T> = (0..n - 1).map(|i| (v[i + 1] * v[i].conj()).arg() / (x[i + 1] - x[i])).collect();
    (0..n)
        .map(|i| match i {
            0 => steps[0],
            _ if i + 1 == n => steps[n - 2],
            _ => (steps[i - 1] + steps[i]) / from_usize::<T>(2),
        })
        .collect()
}
