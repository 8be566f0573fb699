use num_complex::Complex;
use rayon::prelude::*;

use super::params::SuperoscParams;
use super::spectral::spectral_closed_scaled;
use super::synthesis::Synthesis;
use super::time::{time_domain_raw, time_domain_regularized, time_domain_scaled};
use super::variant::Variant;
use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Real, ScaledComplex};
use crate::transforms::{integrate, integrate_inv_sqrt, QuadOptions, SampledFunction, SmoothingKernel, TimeSignal};

#[derive(Clone, Debug)]
pub enum WindowForm<T> {
    ClosedForm(SuperoscParams<T>),
    Variant(Variant<T>),
    Sampled(SampledFunction<T>),
    Synthesized(Synthesis<T>),
    /// `base + noise`, the noise read as a piecewise-linear signal.
    Noisy { base: Box<WindowFunction<T>>, noise: SampledFunction<T> },
}

/// Coupling profile `epsilon(t)`, zero outside `[-t0 - tau, 0]` where `tau`
/// is the smoothing width (zero when unsmoothed).
#[derive(Clone, Debug)]
pub struct WindowFunction<T> {
    t0: T,
    form: WindowForm<T>,
    kernel: Option<SmoothingKernel<T>>,
}

const CONVOLUTION_TOL: f64 = 1e-10;

impl<T: Real> WindowFunction<T> {
    pub fn closed_form(p: SuperoscParams<T>) -> Self {
        Self { t0: p.t0(), form: WindowForm::ClosedForm(p), kernel: None }
    }

    pub fn variant(v: Variant<T>) -> Self {
        Self { t0: v.t0(), form: WindowForm::Variant(v), kernel: None }
    }

    /// A sampled window; the samples must lie inside `[-t0, 0]`.
    pub fn sampled(t0: T, f: SampledFunction<T>) -> Result<Self> {
        let slack = lit::<T>(1e-12) * t0;
        if f.start() < -t0 - slack || f.end() > slack {
            return Err(Error::Precondition(format!(
                "samples span [{}, {}], outside [-t0, 0] with t0 = {}",
                to_f64(f.start()),
                to_f64(f.end()),
                to_f64(t0)
            )));
        }
        Ok(Self { t0, form: WindowForm::Sampled(f), kernel: None })
    }

    pub fn synthesized(s: Synthesis<T>) -> Self {
        Self { t0: s.t0(), form: WindowForm::Synthesized(s), kernel: None }
    }

    pub(crate) fn with_noise(self, noise: SampledFunction<T>) -> Self {
        Self { t0: self.t0, form: WindowForm::Noisy { base: Box::new(self), noise }, kernel: None }
    }

    pub(crate) fn with_kernel(mut self, h: SmoothingKernel<T>) -> Result<Self> {
        if self.kernel.is_some() {
            return Err(Error::Precondition("window is already smoothed".into()));
        }
        self.kernel = Some(h);
        Ok(self)
    }

    pub fn t0(&self) -> T {
        self.t0
    }

    pub fn form(&self) -> &WindowForm<T> {
        &self.form
    }

    pub fn kernel(&self) -> Option<&SmoothingKernel<T>> {
        self.kernel.as_ref()
    }

    /// Differentiability class gained from smoothing.
    pub fn smoothness(&self) -> usize {
        match (&self.kernel, &self.form) {
            (Some(h), _) => h.order(),
            (None, WindowForm::Noisy { base, .. }) => base.smoothness(),
            _ => 0,
        }
    }

    fn base_support(&self) -> (T, T) {
        match &self.form {
            WindowForm::Sampled(f) => (f.start(), f.end()),
            WindowForm::Noisy { base, noise } => {
                let (a, b) = base.support();
                (a.min(noise.start()), b.max(noise.end()))
            }
            _ => (-self.t0, T::zero()),
        }
    }

    pub fn support(&self) -> (T, T) {
        let (a, b) = self.base_support();
        match &self.kernel {
            Some(h) => (a - h.width(), b),
            None => (a, b),
        }
    }

    /// Superoscillatory band declared by the construction, if any.
    pub fn omega_c(&self) -> Option<T> {
        match &self.form {
            WindowForm::ClosedForm(p) => Some(p.domain_end()),
            WindowForm::Variant(v) => Some(v.domain_end()),
            WindowForm::Synthesized(s) => Some(s.omega_c()),
            WindowForm::Sampled(_) => None,
            WindowForm::Noisy { base, .. } => base.omega_c(),
        }
    }

    /// How far below `omega' = 0` the spectrum should be sampled to show the
    /// amplified region; `omega_c` for windows without one.
    pub fn omega_pad(&self) -> T {
        match &self.form {
            WindowForm::ClosedForm(p) => p.omega_pad(),
            WindowForm::Variant(v) => v.cos_params().omega_pad(),
            WindowForm::Synthesized(s) => s.terms().iter().map(|t| t.variant.cos_params().omega_pad()).fold(s.omega_c(), T::max),
            WindowForm::Sampled(_) => lit::<T>(10.0) / self.t0,
            WindowForm::Noisy { base, .. } => base.omega_pad(),
        }
    }

    /// Predicted start of exponential growth, for single-block windows.
    pub fn growth_onset_estimate(&self) -> Option<T> {
        match &self.form {
            WindowForm::ClosedForm(p) => Some(p.growth_onset_estimate()),
            WindowForm::Variant(v) => Some(v.cos_params().growth_onset_estimate()),
            WindowForm::Noisy { base, .. } => base.growth_onset_estimate(),
            _ => None,
        }
    }

    /// Largest `|t'|` among the building blocks, which bounds the phase slope.
    pub fn reach(&self) -> T {
        let block = |p: &SuperoscParams<T>| p.t0() * (p.a().cosh() + T::one()) * lit(0.5);
        match &self.form {
            WindowForm::ClosedForm(p) => block(p),
            WindowForm::Variant(v) => block(v.cos_params()),
            WindowForm::Synthesized(s) => s.terms().iter().map(|t| block(t.variant.cos_params())).fold(self.t0, T::max),
            WindowForm::Sampled(_) => self.t0,
            WindowForm::Noisy { base, .. } => base.reach(),
        }
    }

    /// Where the spectrum settles into its asymptotic decay.
    pub fn tail_onset(&self) -> T {
        let base = match &self.form {
            WindowForm::ClosedForm(p) => p.tail_onset(),
            WindowForm::Variant(v) => v.tail_onset(),
            WindowForm::Synthesized(s) => s.tail_onset(),
            WindowForm::Sampled(f) => lit::<T>(2.0) * T::PI() / (f.end() - f.start()),
            WindowForm::Noisy { base, .. } => base.tail_onset(),
        };
        match &self.kernel {
            Some(h) => base.max(lit::<T>(2.0) / h.width()),
            None => base,
        }
    }

    /// Spectrum `int epsilon(t) e^{i omega' t} dt` in scaled form.
    pub fn spectrum_scaled(&self, omega: T) -> Result<ScaledComplex<T>> {
        let base = match &self.form {
            WindowForm::ClosedForm(p) => spectral_closed_scaled(p, omega)?,
            WindowForm::Variant(v) => v.spectrum_scaled(omega)?,
            WindowForm::Sampled(f) => ScaledComplex::unscaled(f.fourier(omega)),
            WindowForm::Synthesized(s) => s.spectrum_scaled(omega)?,
            WindowForm::Noisy { base, noise } => base.spectrum_scaled(omega)?.add(&ScaledComplex::unscaled(noise.fourier(omega))),
        };
        match &self.kernel {
            Some(h) => Ok(base.scale(h.transform(omega)?)),
            None => Ok(base),
        }
    }

    pub fn spectrum(&self, omega: T) -> Result<Complex<T>> {
        let s = self.spectrum_scaled(omega)?;
        s.to_complex().ok_or(Error::Overflow { log_magnitude: to_f64(s.ln_abs()) })
    }

    /// Spectrum on `grid`, evaluated in parallel.
    pub fn spectral_samples(&self, grid: &[T]) -> Result<SampledFunction<T>> {
        let values = grid.par_iter().map(|&w| self.spectrum(w)).collect::<Result<Vec<_>>>()?;
        SampledFunction::new(grid.to_vec(), values)
    }

    fn singular_ends(&self) -> bool {
        matches!(self.form, WindowForm::ClosedForm(_) | WindowForm::Variant(_))
    }

    /// Unsmoothed value with no endpoint guard.
    fn base_scaled(&self, t: T) -> Result<ScaledComplex<T>> {
        Ok(match &self.form {
            WindowForm::ClosedForm(p) => time_domain_raw(p, t),
            WindowForm::Variant(v) => v.time_scaled(t)?,
            WindowForm::Sampled(f) => ScaledComplex::unscaled(f.interpolate(t)),
            WindowForm::Synthesized(s) => s.time_scaled(t)?,
            WindowForm::Noisy { base, noise } => base.value_scaled(t)?.add(&ScaledComplex::unscaled(noise.interpolate(t))),
        })
    }

    /// Time-domain value in scaled form.
    pub fn value_scaled(&self, t: T) -> Result<ScaledComplex<T>> {
        let Some(h) = &self.kernel else {
            match &self.form {
                WindowForm::ClosedForm(p) => return time_domain_scaled(p, t),
                WindowForm::Variant(v) => {
                    time_domain_scaled(v.cos_params(), t)?;
                }
                _ => {}
            }
            return self.base_scaled(t);
        };
        let (lo, hi) = self.base_support();
        let tau = h.width();
        // (w * h)(t) = int_{-tau}^{0} h(s) w(t - s) ds over t - s inside the base support
        let a = (-tau).max(t - hi);
        let b = T::zero().min(t - lo);
        if !(a < b) {
            return Ok(ScaledComplex::unscaled(Complex::new(T::zero(), T::zero())));
        }
        let peak = self.base_scaled((lo + hi) * lit(0.5))?.log_scale;
        let eval = |s: T| match self.base_scaled(t - s) {
            Ok(v) => v.mantissa * (v.log_scale - peak).exp() * h.value(s),
            Err(_) => Complex::new(T::nan(), T::nan()),
        };
        let opts = QuadOptions::with_tol(lit(CONVOLUTION_TOL));
        let q = if self.singular_ends() {
            let left = a == t - hi;
            let right = b == t - lo;
            integrate_inv_sqrt(eval, a, b, left, right, &opts)?
        } else {
            let mut breaks = Vec::new();
            if let Some(g) = self.sample_grid() {
                breaks.extend(g.iter().map(|&x| t - x).filter(|&s| s > a && s < b));
            }
            integrate(eval, a, b, &opts.breaks(breaks))?
        };
        Ok(ScaledComplex::new(q.value, peak))
    }

    pub fn value(&self, t: T) -> Result<Complex<T>> {
        let s = self.value_scaled(t)?;
        s.to_complex().ok_or(Error::Overflow { log_magnitude: to_f64(s.ln_abs()) })
    }

    fn sample_grid(&self) -> Option<Vec<T>> {
        match &self.form {
            WindowForm::Sampled(f) => Some(f.grid().to_vec()),
            WindowForm::Noisy { base, noise } => {
                let mut g = noise.grid().to_vec();
                if let Some(b) = base.sample_grid() {
                    g.extend(b);
                }
                Some(g)
            }
            WindowForm::Synthesized(s) => s.regular().map(|r| r.grid().to_vec()),
            _ => None,
        }
    }

    fn phase_rate_of(&self) -> T {
        let rate = |p: &SuperoscParams<T>| lit::<T>(2.0) * p.inv_delta_sq() * p.a().cosh() / p.t0();
        match &self.form {
            WindowForm::ClosedForm(p) => rate(p),
            WindowForm::Variant(v) => rate(v.cos_params()),
            WindowForm::Synthesized(s) => s.terms().iter().map(|term| rate(term.variant.cos_params())).fold(T::zero(), T::max),
            WindowForm::Noisy { base, .. } => base.phase_rate_of(),
            WindowForm::Sampled(_) => T::zero(),
        }
    }
}

impl<T: Real> TimeSignal<T> for WindowFunction<T> {
    fn support(&self) -> (T, T) {
        WindowFunction::support(self)
    }

    fn value(&self, t: T) -> Result<Complex<T>> {
        WindowFunction::value(self, t)
    }

    fn phase_rate(&self) -> T {
        self.phase_rate_of()
    }

    fn breakpoints(&self) -> Vec<T> {
        self.sample_grid().unwrap_or_default()
    }

    fn regularized(&self, theta: T) -> Option<Result<Complex<T>>> {
        if self.kernel.is_some() {
            return None;
        }
        let scaled = match &self.form {
            WindowForm::ClosedForm(p) => Ok(time_domain_regularized(p, theta)),
            WindowForm::Variant(v) => v.regularized_scaled(theta),
            _ => return None,
        };
        Some(scaled.and_then(|s| s.to_complex().ok_or(Error::Overflow { log_magnitude: to_f64(s.ln_abs()) })))
    }
}
