use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::params::{PhaseBranch, SuperoscParams};
use super::spectral::spectral_closed_scaled;
use super::time::{time_domain_raw, time_domain_regularized};
use super::SpectralFunction;
use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Real, ScaledComplex};
use crate::transforms::SampledFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VariantKind {
    Cos,
    Sin,
    ComplexPlus,
    ComplexMinus,
}

/// Phase-fixed combination of the two blocks sharing `m`: `cos` uses
/// `1/delta^2 = 2 pi m + pi/4`, `sin` uses `2 pi m - pi/4`, and the complex
/// kinds are `cos +- i sin`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Variant<T> {
    cos: SuperoscParams<T>,
    kind: VariantKind,
}

impl<T: Real> Variant<T> {
    pub fn new(index: u64, a: T, t0: T, amplitude: T, kind: VariantKind) -> Result<Self> {
        let cos = SuperoscParams::from_index(index, a, t0, amplitude, PhaseBranch::Plus)?;
        Ok(Self { cos, kind })
    }

    pub fn from_params(p: &SuperoscParams<T>, kind: VariantKind) -> Self {
        let cos = match p.branch() {
            PhaseBranch::Plus => *p,
            PhaseBranch::Minus => p.partner(),
        };
        Self { cos, kind }
    }

    pub fn kind(&self) -> VariantKind {
        self.kind
    }

    pub fn cos_params(&self) -> &SuperoscParams<T> {
        &self.cos
    }

    pub fn sin_params(&self) -> SuperoscParams<T> {
        self.cos.partner()
    }

    pub fn t0(&self) -> T {
        self.cos.t0()
    }

    /// Target phase-ramp slope `t0 (+-cosh A - 1) / 2` of the complex kinds.
    pub fn t_prime(&self) -> Option<T> {
        let (c, t0) = (self.cos.a().cosh(), self.cos.t0());
        match self.kind {
            VariantKind::ComplexPlus => Some(t0 * (c - T::one()) * lit(0.5)),
            VariantKind::ComplexMinus => Some(-t0 * (c + T::one()) * lit(0.5)),
            _ => None,
        }
    }

    /// Superoscillatory domain end, limited by the larger `delta` of the pair.
    pub fn domain_end(&self) -> T {
        self.sin_params().domain_end()
    }

    pub fn tail_onset(&self) -> T {
        self.cos.tail_onset()
    }

    fn combine(&self, cos: impl Fn(&SuperoscParams<T>) -> Result<ScaledComplex<T>>) -> Result<ScaledComplex<T>> {
        let i = Complex::new(T::zero(), T::one());
        Ok(match self.kind {
            VariantKind::Cos => cos(&self.cos)?,
            VariantKind::Sin => cos(&self.sin_params())?,
            VariantKind::ComplexPlus => cos(&self.cos)?.add(&cos(&self.sin_params())?.scale(i)),
            VariantKind::ComplexMinus => cos(&self.cos)?.add(&cos(&self.sin_params())?.scale(-i)),
        })
    }

    pub fn spectrum_scaled(&self, omega: T) -> Result<ScaledComplex<T>> {
        self.combine(|p| spectral_closed_scaled(p, omega))
    }

    pub fn spectrum(&self, omega: T) -> Result<Complex<T>> {
        let s = self.spectrum_scaled(omega)?;
        s.to_complex().ok_or(Error::Overflow { log_magnitude: to_f64(s.ln_abs()) })
    }

    pub(crate) fn time_scaled(&self, t: T) -> Result<ScaledComplex<T>> {
        self.combine(|p| Ok(time_domain_raw(p, t)))
    }

    pub(crate) fn regularized_scaled(&self, theta: T) -> Result<ScaledComplex<T>> {
        self.combine(|p| Ok(time_domain_regularized(p, theta)))
    }
}

/// Samples a phase-fixed variant over `[-omega_pad, 10 omega_c]`.
///
/// `omega_c` defaults to the variant's own domain end; a larger request
/// breaks `delta^2 cosh(A) t0 omega_c <= 0.1` and is refused.
pub fn make_variant<T: Real>(p: &SuperoscParams<T>, kind: VariantKind, omega_c: Option<T>) -> Result<SpectralFunction<T>> {
    let v = Variant::from_params(p, kind);
    let limit = v.domain_end();
    let omega_c = omega_c.unwrap_or(limit);
    if omega_c > limit * (T::one() + lit(1e-12)) {
        let d2 = T::one() / v.sin_params().inv_delta_sq();
        return Err(Error::DomainTooLarge { product: to_f64(d2 * p.a().cosh() * p.t0() * omega_c) });
    }
    let pad = v.sin_params().omega_pad();
    let hi = lit::<T>(10.0) * omega_c;
    let reach = p.t0() * (p.a().cosh() + T::one()) * lit(0.5);
    // a quarter turn of the fastest expected phase per step, at least 4096 points
    let step = (T::FRAC_PI_4() / reach).min((hi + pad) / lit(4095.0));
    let n = to_f64((hi + pad) / step).ceil() as usize + 1;
    let samples = SampledFunction::tabulate_try(-pad, hi, n, |w| v.spectrum(w))?;
    SpectralFunction::new(omega_c, samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cis;

    #[test]
    fn complex_variant_tracks_phase_ramp() {
        for kind in [VariantKind::ComplexPlus, VariantKind::ComplexMinus] {
            let v = Variant::<f64>::new(17, 3.0, 1.0, 1.0, kind).unwrap();
            let wc = v.domain_end();
            let mid = 0.5 * wc;
            let want = cis(mid * v.t_prime().unwrap());
            let got = v.spectrum(mid).unwrap();
            assert!((got - want).norm() <= 0.05, "{kind:?} {got} {want}");
        }
    }

    #[test]
    fn cos_variant_envelope() {
        let p = SuperoscParams::new(0.2, 7.5, 1.0, 0.1, PhaseBranch::Plus).unwrap();
        let v = Variant::from_params(&p, VariantKind::Cos);
        let wc = v.domain_end();
        for i in 0..20 {
            let w = wc * i as f64 / 19.0;
            let a = w * 0.5;
            let env = 0.1 * (a * 7.5f64.cosh()).cos().abs();
            assert!((v.spectrum(w).unwrap().norm() - env).abs() < 0.01);
        }
    }

    #[test]
    fn make_variant_refuses_wide_domain() {
        let p = SuperoscParams::from_index(17, 3.0, 1.0, 1.0, PhaseBranch::Plus).unwrap();
        assert!(matches!(make_variant(&p, VariantKind::Cos, Some(100.0)), Err(Error::DomainTooLarge { .. })));
        let s = make_variant(&p, VariantKind::ComplexPlus, None).unwrap();
        assert!(s.samples().start() < 0.0);
        assert!(s.samples().end() >= 10.0 * s.omega_c() * (1.0 - 1e-12));
    }
}
