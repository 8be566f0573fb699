//! Spectral synthesis: a desired profile `eps_des(t')` is assembled from
//! phase-ramp variants, `eps~(w') ~ int eps_des(t') e^{i w' t'} dt'`.

use num_complex::Complex;
use rayon::prelude::*;

use super::params::{PhaseBranch, SuperoscParams};
use super::variant::{Variant, VariantKind};
use super::window::WindowFunction;
use crate::error::{Error, Result};
use crate::scalar::{from_usize, lit, to_f64, Real, ScaledComplex};
use crate::transforms::{uniform_grid, SampledFunction};

/// Points on `[0, omega_c]` where the achieved deviation is measured.
pub const DEVIATION_POINTS: usize = 801;
/// Outside `[-T, T]` the target must stay below this fraction of its peak.
pub const TRUNCATION_FRACTION: f64 = 1e-2;
const PROBE_POINTS: usize = 4001;

#[derive(Clone, Debug)]
pub enum DesiredProfile<T> {
    /// `weight * delta(t - t_prime)`, whose spectrum is a pure phase ramp.
    Impulse { t_prime: T, weight: Complex<T> },
    /// Samples of `eps_des(t')`.
    Temporal(SampledFunction<T>),
    /// Samples of the target spectrum `eps~_des(w')`.
    Spectral(SampledFunction<T>),
}

impl<T: Real> DesiredProfile<T> {
    /// `eps_des(t')`; an impulse has no pointwise value and reads as zero.
    pub fn time(&self, t: T) -> Complex<T> {
        match self {
            Self::Impulse { .. } => Complex::new(T::zero(), T::zero()),
            Self::Temporal(f) => f.interpolate(t),
            Self::Spectral(g) => g.fourier(-t) / (lit::<T>(2.0) * T::PI()),
        }
    }

    pub fn spectrum(&self, omega: T) -> Complex<T> {
        match self {
            Self::Impulse { t_prime, weight } => *weight * Complex::new(T::zero(), omega * *t_prime).exp(),
            Self::Temporal(f) => f.fourier(omega),
            Self::Spectral(g) => g.interpolate(omega),
        }
    }

    /// `(t, |eps_des(t)|)` at probe points covering `[-reach, reach]`.
    fn probe(&self, reach: T) -> Result<Vec<(T, T)>> {
        let grid = match self {
            Self::Temporal(f) => f.grid().to_vec(),
            _ => uniform_grid(-reach, reach, PROBE_POINTS)?,
        };
        Ok(grid.par_iter().map(|&t| (t, self.time(t).norm())).collect())
    }
}

/// Shared parameters of the synthesis terms: every variant uses the
/// quantization index `index`, with `A` ranging up to `a_max`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SynthesisFamily<T> {
    t0: T,
    a_max: T,
    index: u64,
    omega_c: T,
}

impl<T: Real> SynthesisFamily<T> {
    /// `delta` is quantized on the plus branch; the band `[0, omega_c]`
    /// must lie inside the domain of the widest variant.
    pub fn new(t0: T, a_max: T, delta: T, omega_c: T) -> Result<Self> {
        let p = SuperoscParams::new(delta, a_max, t0, T::one(), PhaseBranch::Plus)?;
        Self::from_index(t0, a_max, p.index(), omega_c)
    }

    pub fn from_index(t0: T, a_max: T, index: u64, omega_c: T) -> Result<Self> {
        if !(omega_c > T::zero()) {
            return Err(Error::Precondition(format!("omega_c must be > 0, got {}", to_f64(omega_c))));
        }
        let v = Variant::new(index, a_max, t0, T::one(), VariantKind::ComplexPlus)?;
        if omega_c > v.domain_end() * (T::one() + lit(1e-12)) {
            let d2 = T::one() / v.sin_params().inv_delta_sq();
            return Err(Error::DomainTooLarge { product: to_f64(d2 * a_max.cosh() * t0 * omega_c) });
        }
        Ok(Self { t0, a_max, index, omega_c })
    }

    /// Family covering `[-t_max, t_max]` whose widest variant keeps its
    /// quartic phase error `delta^2 (w t0 cosh A)^2 / 8` below `phase_tol`
    /// across the band.
    pub fn for_band(t0: T, t_max: T, omega_c: T, phase_tol: T) -> Result<Self> {
        if !(t_max > T::zero()) || !(phase_tol > T::zero()) {
            return Err(Error::Precondition("t_max and phase_tol must be > 0".into()));
        }
        let a_max = (lit::<T>(2.0) * t_max / t0 + T::one()).acosh();
        let d = (lit::<T>(8.0) * phase_tol).sqrt() / (omega_c * t0 * a_max.cosh());
        let m = to_f64((T::one() / (d * d) - T::FRAC_PI_4()) / (lit::<T>(2.0) * T::PI())).ceil().max(1.0) as u64;
        Self::from_index(t0, a_max, m, omega_c)
    }

    pub fn t0(&self) -> T {
        self.t0
    }

    pub fn a_max(&self) -> T {
        self.a_max
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn omega_c(&self) -> T {
        self.omega_c
    }

    pub fn delta(&self) -> T {
        let b = lit::<T>(2.0) * T::PI() * lit(self.index as f64) + T::FRAC_PI_4();
        T::one() / b.sqrt()
    }

    /// Largest `t'` a complex-plus variant of the family reaches.
    pub fn plus_reach(&self) -> T {
        self.t0 * (self.a_max.cosh() - T::one()) * lit(0.5)
    }

    /// Largest `|t'|` a complex-minus variant of the family reaches.
    pub fn minus_reach(&self) -> T {
        self.t0 * (self.a_max.cosh() + T::one()) * lit(0.5)
    }

    fn variant_at(&self, t_prime: T) -> Result<Variant<T>> {
        let (c, kind) = if t_prime >= T::zero() {
            (lit::<T>(2.0) * t_prime / self.t0 + T::one(), VariantKind::ComplexPlus)
        } else {
            (-lit::<T>(2.0) * t_prime / self.t0 - T::one(), VariantKind::ComplexMinus)
        };
        Variant::new(self.index, c.max(T::one()).acosh(), self.t0, T::one(), kind)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Term<T> {
    pub weight: Complex<T>,
    pub variant: Variant<T>,
}

#[derive(Clone, Debug)]
pub struct Synthesis<T> {
    family: SynthesisFamily<T>,
    terms: Vec<Term<T>>,
    regular: Option<SampledFunction<T>>,
    deviation: T,
}

impl<T: Real> Synthesis<T> {
    pub fn family(&self) -> &SynthesisFamily<T> {
        &self.family
    }

    pub fn t0(&self) -> T {
        self.family.t0
    }

    pub fn omega_c(&self) -> T {
        self.family.omega_c
    }

    pub fn terms(&self) -> &[Term<T>] {
        &self.terms
    }

    /// The part of the target already inside `[-t0, 0]`, used as is.
    pub fn regular(&self) -> Option<&SampledFunction<T>> {
        self.regular.as_ref()
    }

    /// Achieved `sup |eps~ - eps~_des|` on `[0, omega_c]`.
    pub fn deviation(&self) -> T {
        self.deviation
    }

    pub fn tail_onset(&self) -> T {
        self.terms.iter().map(|t| t.variant.tail_onset()).fold(lit::<T>(2.0) * T::PI() / self.t0(), T::max)
    }

    pub fn spectrum_scaled(&self, omega: T) -> Result<ScaledComplex<T>> {
        let mut acc = ScaledComplex::unscaled(self.regular.as_ref().map_or(Complex::new(T::zero(), T::zero()), |r| r.fourier(omega)));
        for term in &self.terms {
            acc = acc.add(&term.variant.spectrum_scaled(omega)?.scale(term.weight));
        }
        Ok(acc)
    }

    pub(crate) fn time_scaled(&self, t: T) -> Result<ScaledComplex<T>> {
        let mut acc = ScaledComplex::unscaled(self.regular.as_ref().map_or(Complex::new(T::zero(), T::zero()), |r| r.interpolate(t)));
        for term in &self.terms {
            acc = acc.add(&term.variant.time_scaled(t)?.scale(term.weight));
        }
        Ok(acc)
    }

    fn measure_deviation(&mut self, target: &DesiredProfile<T>) -> Result<()> {
        let grid = uniform_grid(T::zero(), self.omega_c(), DEVIATION_POINTS)?;
        let devs = grid
            .par_iter()
            .map(|&w| {
                let s = self.spectrum_scaled(w)?;
                let got = s.to_complex().ok_or(Error::Overflow { log_magnitude: to_f64(s.ln_abs()) })?;
                Ok((got - target.spectrum(w)).norm())
            })
            .collect::<Result<Vec<T>>>()?;
        self.deviation = devs.into_iter().fold(T::zero(), T::max);
        Ok(())
    }
}

/// Trapezoid nodes `(t', weight)` of `int_0^{a_end} f(t'(A)) (t0/2) sinh A dA`,
/// without the zero-weight node at `A = 0`.
fn cosh_nodes<T: Real>(t0: T, a_end: T, n: usize, sign: T) -> Vec<(T, T)> {
    let da = a_end / from_usize::<T>(n - 1);
    (1..n)
        .map(|j| {
            let a = da * from_usize::<T>(j);
            let half = if j + 1 == n { lit::<T>(0.5) } else { T::one() };
            let tp = t0 * (sign * a.cosh() - T::one()) * lit(0.5);
            (tp, t0 * lit::<T>(0.5) * a.sinh() * da * half)
        })
        .collect()
}

/// Synthesizes `target` on `[-t_max, t_max]` from `n_terms` quadrature nodes:
/// half on the complex-plus side `t' >= 0`, a share proportional to
/// `t_max - t0` on the complex-minus side `t' <= -t0`, and the rest sampling
/// the target directly on `[-t0, 0]`. An impulse target yields one variant.
pub fn synthesize_window<T: Real>(
    target: &DesiredProfile<T>,
    t_max: T,
    family: &SynthesisFamily<T>,
    n_terms: usize,
) -> Result<WindowFunction<T>> {
    let t0 = family.t0;
    if let DesiredProfile::Impulse { t_prime, weight } = target {
        let tp = *t_prime;
        if tp > -t0 && tp < T::zero() {
            return Err(Error::Precondition(format!(
                "impulse at t' = {} lies inside the support and needs no synthesis",
                to_f64(tp)
            )));
        }
        let reach = if tp >= T::zero() { family.plus_reach() } else { family.minus_reach() };
        if tp.abs() > reach.min(t_max) * (T::one() + lit(1e-12)) {
            return Err(Error::Truncation { required: to_f64(tp.abs()), available: to_f64(reach.min(t_max)) });
        }
        let mut s = Synthesis {
            family: *family,
            terms: vec![Term { weight: *weight, variant: family.variant_at(tp)? }],
            regular: None,
            deviation: T::zero(),
        };
        s.measure_deviation(target)?;
        return Ok(WindowFunction::synthesized(s));
    }

    if t_max < t0 || t_max > family.minus_reach() * (T::one() + lit(1e-12)) {
        return Err(Error::Precondition(format!(
            "t_max = {} must lie in [t0, t0 (cosh A_max + 1)/2] = [{}, {}]",
            to_f64(t_max),
            to_f64(t0),
            to_f64(family.minus_reach())
        )));
    }
    let n_plus = n_terms / 2;
    let n_minus = if t_max > t0 {
        to_f64(from_usize::<T>(n_terms) * (t_max - t0) / (lit::<T>(2.0) * t_max)).round() as usize
    } else {
        0
    };
    let n_regular = n_terms.saturating_sub(n_plus + n_minus);
    if n_plus < 2 || n_regular < 2 || n_minus == 1 {
        return Err(Error::Precondition(format!("n_terms = {n_terms} is too small to populate every node group")));
    }

    let plus_end = t_max.min(family.plus_reach());
    check_truncation(target, -t_max, plus_end, t_max)?;

    let mut nodes = cosh_nodes(t0, (lit::<T>(2.0) * plus_end / t0 + T::one()).acosh(), n_plus, T::one());
    if n_minus > 0 {
        nodes.extend(cosh_nodes(t0, (lit::<T>(2.0) * t_max / t0 - T::one()).acosh(), n_minus, -T::one()));
    }
    let terms = nodes
        .par_iter()
        .map(|&(tp, w)| Ok(Term { weight: target.time(tp) * w, variant: family.variant_at(tp)? }))
        .collect::<Result<Vec<_>>>()?;
    let regular = SampledFunction::tabulate(-t0, T::zero(), n_regular, |t| target.time(t))?;

    let mut s = Synthesis { family: *family, terms, regular: Some(regular), deviation: T::zero() };
    s.measure_deviation(target)?;
    Ok(WindowFunction::synthesized(s))
}

fn check_truncation<T: Real>(target: &DesiredProfile<T>, lo: T, hi: T, t_max: T) -> Result<()> {
    let probes = target.probe(lit::<T>(3.0) * t_max)?;
    let peak = probes.iter().map(|p| p.1).fold(T::zero(), T::max);
    let threshold = peak * lit(TRUNCATION_FRACTION);
    let outside = probes
        .iter()
        .filter(|(t, v)| (*t < lo || *t > hi) && *v > threshold)
        .map(|(t, _)| t.abs())
        .fold(None, |acc: Option<T>, t| Some(acc.map_or(t, |a| a.max(t))));
    match outside {
        Some(required) => Err(Error::Truncation { required: to_f64(required), available: to_f64(hi.min(-lo)) }),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cis;

    fn ramp_family() -> SynthesisFamily<f64> {
        SynthesisFamily::from_index(1.0, 3.0, 17, 1.0).unwrap()
    }

    #[test]
    fn impulse_reduces_to_one_variant() {
        let fam = ramp_family();
        let tp = 4.0;
        let target = DesiredProfile::Impulse { t_prime: tp, weight: Complex::new(1.0, 0.0) };
        let w = synthesize_window(&target, 5.0, &fam, 256).unwrap();
        let crate::superosc::WindowForm::Synthesized(s) = w.form() else { panic!() };
        assert_eq!(s.terms().len(), 1);
        let v = s.terms()[0].variant;
        assert!((v.t_prime().unwrap() - tp).abs() < 1e-12);
        let own = (0..DEVIATION_POINTS)
            .map(|i| {
                let om = i as f64 / (DEVIATION_POINTS - 1) as f64;
                (v.spectrum(om).unwrap() - cis(om * tp)).norm()
            })
            .fold(0.0, f64::max);
        assert!((s.deviation() - own).abs() < 1e-12);
        let mid = 0.5 * v.domain_end();
        assert!((w.spectrum(mid).unwrap() - cis(mid * tp)).norm() <= 0.05);
    }

    #[test]
    fn impulse_inside_support_rejected() {
        let target = DesiredProfile::Impulse { t_prime: -0.5, weight: Complex::new(1.0, 0.0) };
        assert!(matches!(synthesize_window(&target, 2.0, &ramp_family(), 8), Err(Error::Precondition(_))));
    }

    #[test]
    fn for_band_respects_domain() {
        let fam = SynthesisFamily::<f64>::for_band(1.0, 6.0, 10.0, 0.02).unwrap();
        assert!((fam.a_max().cosh() - 13.0).abs() < 1e-12);
        let d2 = fam.delta().powi(2);
        assert!(d2 * 13.0 * 10.0 <= 0.1);
        assert!(SynthesisFamily::<f64>::from_index(1.0, 3.0, 1, 100.0).is_err());
    }

    #[test]
    fn temporal_target_outside_reach_is_truncated() {
        let f = SampledFunction::tabulate(-9.0, 9.0, 181, |t: f64| Complex::new((-t * t / 8.0).exp(), 0.0)).unwrap();
        let fam = SynthesisFamily::for_band(1.0, 3.0, 2.0, 0.02).unwrap();
        let r = synthesize_window(&DesiredProfile::Temporal(f), 3.0, &fam, 64);
        assert!(matches!(r, Err(Error::Truncation { .. })), "{r:?}");
    }

    #[test]
    fn gaussian_pulse_is_reproduced() {
        // eps_des centered at t' = 1.5, width 0.3; spectrum e^{i w 1.5} e^{-(0.3 w)^2/2}
        let f = SampledFunction::tabulate(-4.0, 4.0, 801, |t: f64| {
            let x = (t - 1.5) / 0.3;
            Complex::new((-x * x / 2.0).exp() / (0.3 * (2.0 * std::f64::consts::PI).sqrt()), 0.0)
        })
        .unwrap();
        let fam = SynthesisFamily::for_band(1.0, 3.0, 4.0, 0.02).unwrap();
        let w = synthesize_window(&DesiredProfile::Temporal(f), 3.0, &fam, 128).unwrap();
        let crate::superosc::WindowForm::Synthesized(s) = w.form() else { panic!() };
        assert!(s.deviation() < 0.02, "{}", s.deviation());
        let om = 3.0;
        let want = cis(om * 1.5) * (-(0.3f64 * om).powi(2) / 2.0).exp();
        assert!((w.spectrum(om).unwrap() - want).norm() < 0.02);
    }
}
