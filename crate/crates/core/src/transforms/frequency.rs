//! Phase unwrapping, instantaneous frequency and envelope-slope estimators.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{from_usize, lit, to_f64, Real};
use crate::transforms::SampledFunction;

/// Unwrapped argument of the samples.
///
/// Steps within a tenth of a half turn of `+-pi` are ambiguous and raise an
/// aliasing error, except between collinear neighbours, where the step is a
/// sign change of a real-proportional signal and carries no phase.
pub fn unwrapped_phase<T: Real>(values: &[Complex<T>]) -> Result<Vec<T>> {
    let mut out = Vec::with_capacity(values.len());
    let Some(first) = values.first() else {
        return Ok(out);
    };
    let mut phase = first.arg();
    out.push(phase);
    let edge = T::PI() * lit(0.9);
    for (i, w) in values.windows(2).enumerate() {
        let cross = w[1] * w[0].conj();
        let mut step = cross.arg();
        if step.abs() >= edge {
            let collinear = cross.im.abs() <= lit::<T>(1e-9) * cross.norm();
            if !collinear {
                return Err(Error::Aliasing { index: i + 1, jump: to_f64(step) });
            }
            step = T::zero();
        }
        phase = phase + step;
        out.push(phase);
    }
    Ok(out)
}

/// Centred finite difference of the unwrapped phase, `d arg s / d omega`.
pub fn local_frequency<T: Real>(s: &SampledFunction<T>) -> Result<Vec<T>> {
    let phase = unwrapped_phase(s.values())?;
    let x = s.grid();
    let n = x.len();
    Ok((0..n)
        .map(|i| {
            let (lo, hi) = match i {
                0 => (0, 1),
                _ if i + 1 == n => (n - 2, n - 1),
                _ => (i - 1, i + 1),
            };
            (phase[hi] - phase[lo]) / (x[hi] - x[lo])
        })
        .collect())
}

/// Frequency of a real oscillation on a uniform grid from the Teager-Kaiser
/// energy of the signal and of its symmetric difference, pooled over
/// `2 * half_window + 1` samples. Edges reuse the nearest interior estimate.
pub fn desa_frequency<T: Real>(values: &[T], step: T, half_window: usize) -> Result<Vec<T>> {
    let n = values.len();
    if n < 7 + 2 * half_window {
        return Err(Error::Precondition(format!("DESA needs at least {} samples, got {n}", 7 + 2 * half_window)));
    }
    let teager = |v: &[T], i: usize| v[i] * v[i] - v[i - 1] * v[i + 1];
    let diff: Vec<T> = (0..n).map(|i| if i == 0 || i + 1 == n { T::zero() } else { values[i + 1] - values[i - 1] }).collect();
    let first = 2 + half_window;
    let last = n - 3 - half_window;
    let mut out = vec![T::zero(); n];
    for i in first..=last {
        let mut ex = T::zero();
        let mut ey = T::zero();
        for j in i - half_window..=i + half_window {
            ex = ex + teager(values, j);
            ey = ey + teager(&diff, j);
        }
        let ratio = if ex > T::zero() { (ey / ex).max(T::zero()) } else { T::zero() };
        let s = (ratio.sqrt() * lit(0.5)).min(T::one());
        out[i] = s.asin() / step;
    }
    for i in 0..first {
        out[i] = out[first];
    }
    for i in last + 1..n {
        out[i] = out[last];
    }
    Ok(out)
}

/// Exponent `p` of an envelope decay `|s| ~ omega^{-p}` on `[lo, hi]`.
///
/// `log_abs` returns `ln |s(omega)|`. The envelope in each of `bins`
/// logarithmic bins is the maximum over at least one `period` of the local
/// oscillation; the exponent is the least-squares slope in log-log scale.
pub fn tail_exponent<T, F>(log_abs: F, lo: T, hi: T, period: T, bins: usize) -> Result<T>
where
    T: Real,
    F: Fn(T) -> Result<T>,
{
    if !(lo > T::zero() && hi > lo) || bins < 3 {
        return Err(Error::Precondition("tail fit needs 0 < lo < hi and at least 3 bins".into()));
    }
    let ratio = (hi / lo).ln() / from_usize::<T>(bins);
    let mut xs = Vec::with_capacity(bins);
    let mut ys = Vec::with_capacity(bins);
    for b in 0..bins {
        let start = lo * (ratio * from_usize::<T>(b)).exp();
        let width = (start * (ratio.exp() - T::one())).max(period);
        let samples = 64usize;
        let mut best = T::neg_infinity();
        for j in 0..samples {
            let w = start + width * from_usize::<T>(j) / from_usize::<T>(samples - 1);
            best = best.max(log_abs(w)?);
        }
        if best.is_finite() {
            xs.push((start + width * lit(0.5)).ln());
            ys.push(best);
        }
    }
    let slope = least_squares_slope(&xs, &ys)
        .ok_or_else(|| Error::Precondition("not enough finite envelope samples for a tail fit".into()))?;
    Ok(-slope)
}

pub fn least_squares_slope<T: Real>(xs: &[T], ys: &[T]) -> Option<T> {
    let n = xs.len();
    if n < 2 || ys.len() != n {
        return None;
    }
    let nn = from_usize::<T>(n);
    let mx = xs.iter().copied().sum::<T>() / nn;
    let my = ys.iter().copied().sum::<T>() / nn;
    let mut sxy = T::zero();
    let mut sxx = T::zero();
    for (&x, &y) in xs.iter().zip(ys) {
        sxy = sxy + (x - mx) * (y - my);
        sxx = sxx + (x - mx) * (x - mx);
    }
    (sxx > T::zero()).then(|| sxy / sxx)
}
