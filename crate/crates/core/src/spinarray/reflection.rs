//! Two-spin reflection series: spins at `x = +a` and `x = -a` whose summed
//! radial profiles reproduce `F` everywhere outside `[-a, a]`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex;

use super::SpinArray;
use crate::error::{Error, Result};
use crate::scalar::{from_usize, lit, to_f64, Real};
use crate::transforms::{uniform_grid, SampledFunction};

/// How fast the target falls off outside its support hint.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DecayClass<T> {
    /// Exactly zero outside the hint.
    Compact,
    /// Faster than any geometric sequence.
    Gaussian,
    /// `|F(x)| ~ |x|^{-exponent}`.
    Power { exponent: T },
}

type ProfileFn<T> = dyn Fn(T) -> Complex<T> + Send + Sync;

/// Target field profile `F(x)` on the line.
#[derive(Clone)]
pub struct TargetProfile<T> {
    f: Arc<ProfileFn<T>>,
    support: (T, T),
    decay: DecayClass<T>,
}

impl<T: fmt::Debug> fmt::Debug for TargetProfile<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TargetProfile").field("support", &self.support).field("decay", &self.decay).finish_non_exhaustive()
    }
}

impl<T: Real> TargetProfile<T> {
    pub fn new<F>(f: F, support: (T, T), decay: DecayClass<T>) -> Result<Self>
    where
        F: Fn(T) -> Complex<T> + Send + Sync + 'static,
    {
        if !(support.0 < support.1) {
            return Err(Error::Precondition("support hint must be a nonempty interval".into()));
        }
        Ok(Self { f: Arc::new(f), support, decay })
    }

    /// Zero outside the sampled interval.
    pub fn sampled(s: SampledFunction<T>) -> Result<Self> {
        let support = (s.start(), s.end());
        Self::new(move |x| s.interpolate(x), support, DecayClass::Compact)
    }

    /// `amplitude * exp(-(x - center)^2 / (2 width^2))`, hinted out to 12 widths.
    pub fn gaussian(center: T, width: T, amplitude: T) -> Result<Self> {
        if !(width > T::zero()) {
            return Err(Error::Precondition("gaussian width must be > 0".into()));
        }
        let reach = lit::<T>(12.0) * width;
        Self::new(
            move |x| Complex::new(amplitude * (-((x - center) / width).powi(2) * lit(0.5)).exp(), T::zero()),
            (center - reach, center + reach),
            DecayClass::Gaussian,
        )
    }

    pub fn eval(&self, x: T) -> Complex<T> {
        match self.decay {
            DecayClass::Compact if x < self.support.0 || x > self.support.1 => Complex::new(T::zero(), T::zero()),
            _ => (self.f)(x),
        }
    }

    pub fn support(&self) -> (T, T) {
        self.support
    }

    pub fn decay(&self) -> DecayClass<T> {
        self.decay
    }

    fn extent(&self) -> T {
        self.support.1.max(-self.support.0)
    }

    fn reflected_max(&self, x: T) -> T {
        self.eval(x).norm().max(self.eval(-x).norm())
    }

    /// `sup_{|y| >= x} |F(y)|`, sampled over the support hint.
    fn sup_beyond(&self, x: T) -> T {
        let (lo, hi) = self.support;
        let grid = uniform_grid(lo, hi, 2001).unwrap_or_default();
        grid.into_iter().filter(|y| y.abs() >= x).map(|y| self.eval(y).norm()).fold(self.reflected_max(x), T::max)
    }
}

/// Truncated reflection series and its tail bound.
#[derive(Clone, Debug)]
pub struct ReflectionSeries<T> {
    target: TargetProfile<T>,
    a: T,
    n_max: usize,
    tail_bound: T,
}

impl<T: Real> ReflectionSeries<T> {
    pub fn a(&self) -> T {
        self.a
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn target(&self) -> &TargetProfile<T> {
        &self.target
    }

    /// Upper bound on the dropped terms of either profile.
    pub fn tail_bound(&self) -> T {
        self.tail_bound
    }

    /// `alpha_1 f_1(xi) = sum_n F(xi + (4n+1)a) - F(-xi - (4n+3)a)`, the spin at `+a`.
    pub fn profile1(&self, xi: T) -> Complex<T> {
        let a = self.a;
        (0..=self.n_max).fold(Complex::new(T::zero(), T::zero()), |acc, n| {
            let k = from_usize::<T>(4 * n);
            acc + self.target.eval(xi + (k + T::one()) * a) - self.target.eval(-xi - (k + lit(3.0)) * a)
        })
    }

    /// `alpha_2 f_2(xi) = sum_n F(-xi - (4n+1)a) - F(xi + (4n+3)a)`, the spin at `-a`.
    pub fn profile2(&self, xi: T) -> Complex<T> {
        let a = self.a;
        (0..=self.n_max).fold(Complex::new(T::zero(), T::zero()), |acc, n| {
            let k = from_usize::<T>(4 * n);
            acc + self.target.eval(-xi - (k + T::one()) * a) - self.target.eval(xi + (k + lit(3.0)) * a)
        })
    }

    /// Field produced by the two spins at `x`.
    pub fn reconstruct(&self, x: T) -> Complex<T> {
        self.profile1((x - self.a).abs()) + self.profile2((x + self.a).abs())
    }

    /// `reconstruct - F` on `[-a, a]`.
    pub fn residual(&self, points: usize) -> Result<SampledFunction<T>> {
        SampledFunction::tabulate(-self.a, self.a, points, |x| self.reconstruct(x) - self.target.eval(x))
    }

    /// Largest `xi` at which either profile can still be nonzero inside the hint.
    pub fn xi_extent(&self) -> T {
        (self.target.extent() - self.a).max(self.a)
    }

    /// The two spins with profiles sampled at `points` nodes of `[0, xi_extent]`.
    pub fn spin_array(&self, points: usize) -> Result<SpinArray<T>> {
        let ext = self.xi_extent();
        let p1 = SampledFunction::tabulate(T::zero(), ext, points, |xi| self.profile1(xi))?;
        let p2 = SampledFunction::tabulate(T::zero(), ext, points, |xi| self.profile2(xi))?;
        SpinArray::on_line(&[self.a, -self.a], vec![p1, p2], -self.a, self.a)
    }
}

fn tail_bound<T: Real>(target: &TargetProfile<T>, a: T, n_max: usize) -> T {
    let step = lit::<T>(2.0) * a;
    let extent = target.extent();
    let mut x = from_usize::<T>(4 * n_max + 5) * a;
    let mut bound = T::zero();
    let mut guard = 0usize;
    while x <= extent {
        bound = bound + target.sup_beyond(x);
        x = x + step;
        guard += 1;
        if guard > 1_000_000 {
            return T::infinity();
        }
    }
    let m1 = target.reflected_max(x);
    if m1 == T::zero() {
        return bound;
    }
    let tail = match target.decay {
        DecayClass::Compact => T::zero(),
        DecayClass::Gaussian => {
            let q = target.reflected_max(x + step) / m1;
            if q >= T::one() {
                T::infinity()
            } else {
                m1 / (T::one() - q)
            }
        }
        DecayClass::Power { exponent } if exponent > T::one() => m1 * (T::one() + x / (step * (exponent - T::one()))),
        DecayClass::Power { .. } => T::infinity(),
    };
    bound + tail
}

/// Spins at `x_1 = a`, `x_2 = -a` with series truncated after `n = n_max`.
/// Fails with [`Error::SlowDecay`] when the dropped terms may exceed `tolerance`.
pub fn reflection_series_weights<T: Real>(
    target: &TargetProfile<T>,
    a: T,
    n_max: usize,
    tolerance: T,
) -> Result<ReflectionSeries<T>> {
    if !(a > T::zero()) {
        return Err(Error::Precondition(format!("spin offset a must be > 0, got {}", to_f64(a))));
    }
    if n_max < 1 {
        return Err(Error::Precondition("n_max must be >= 1".into()));
    }
    let bound = tail_bound(target, a, n_max);
    if !(bound <= tolerance) {
        return Err(Error::SlowDecay { bound: to_f64(bound), tolerance: to_f64(tolerance) });
    }
    Ok(ReflectionSeries { target: target.clone(), a, n_max, tail_bound: bound })
}
