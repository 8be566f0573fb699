//! Superoscillatory windows: closed and integral forms, time domain,
//! phase-fixed variants, smoothing and spectral synthesis.

pub mod params;
pub mod report;
pub mod spectral;
pub mod synthesis;
pub mod time;
pub mod variant;
pub mod window;

pub use params::{PhaseBranch, SuperoscParams};
pub use report::{spectral_table, superoscillation_report, SpectralRow, SuperoscillationReport};
pub use spectral::{envelope_relative_error, eval_spectral_closed, eval_spectral_integral, spectral_closed_scaled, spectral_integral_scaled};
pub use synthesis::{synthesize_window, DesiredProfile, Synthesis, SynthesisFamily, Term};
pub use time::{eval_time_domain, time_domain_scaled, ENDPOINT_GUARD};
pub use variant::{make_variant, Variant, VariantKind};
pub use window::{WindowForm, WindowFunction};

use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Real};
use crate::transforms::SampledFunction;

/// Spectrum samples with the declared superoscillatory band `[0, omega_c]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralFunction<T> {
    omega_c: T,
    samples: SampledFunction<T>,
}

impl<T: Real> SpectralFunction<T> {
    /// The samples must reach from at most 0 up to at least `10 omega_c`.
    pub fn new(omega_c: T, samples: SampledFunction<T>) -> Result<Self> {
        if !(omega_c > T::zero()) {
            return Err(Error::Precondition(format!("omega_c must be > 0, got {}", to_f64(omega_c))));
        }
        let need = lit::<T>(10.0) * omega_c * (T::one() - lit(1e-12));
        if samples.start() > T::zero() || samples.end() < need {
            return Err(Error::GridMismatch(format!(
                "spectral grid [{}, {}] does not cover [0, 10 omega_c = {}]",
                to_f64(samples.start()),
                to_f64(samples.end()),
                to_f64(lit::<T>(10.0) * omega_c)
            )));
        }
        Ok(Self { omega_c, samples })
    }

    pub fn omega_c(&self) -> T {
        self.omega_c
    }

    pub fn samples(&self) -> &SampledFunction<T> {
        &self.samples
    }
}
