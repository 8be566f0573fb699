//! End-to-end remote preparation of a mirror pair on the line.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::amplitude::{amplitude_profile, desired_spectrum_mirror_pair, normalized_correlation, probe_midpoints, AmplitudeProfile};
use super::field::{propagator, FieldConfig, KGrid};
use super::state::{desired_state, fidelity, generated_state, OneParticleState, SourceWeights, TargetField};
use crate::error::{Error, Result};
use crate::scalar::{cis, lit, Real};
use crate::superosc::{synthesize_window, DesiredProfile, SynthesisFamily, WindowForm, WindowFunction};
use crate::transforms::{convolve, SampledFunction, SmoothingKernel};

/// How a spectral target is turned into a window.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SynthesisSettings<T> {
    pub t0: T,
    /// Half-width `T` of the synthesized `t'` range.
    pub t_max: T,
    pub omega_c: T,
    /// Quartic phase error allowed at the band edge for the widest variant.
    pub phase_tol: T,
    pub n_terms: usize,
    /// Smoothing width; zero leaves the window unsmoothed.
    pub kernel_width: T,
    pub kernel_order: usize,
}

impl<T: Real> SynthesisSettings<T> {
    pub fn desk(omega_c: T) -> Self {
        Self {
            t0: T::one(),
            t_max: lit(6.0),
            omega_c,
            phase_tol: lit(0.02),
            n_terms: 256,
            kernel_width: lit(0.05),
            kernel_order: 2,
        }
    }

    pub fn kernel(&self) -> Result<Option<SmoothingKernel<T>>> {
        if self.kernel_width == T::zero() {
            return Ok(None);
        }
        SmoothingKernel::new(self.kernel_width, self.kernel_order).map(Some)
    }
}

/// Synthesizes a window whose smoothed spectrum tracks `target` on the band.
/// The target is advanced by half the kernel width so the kernel's delay
/// cancels.
pub fn synthesize_spectral_target<T: Real>(target: &SampledFunction<T>, s: &SynthesisSettings<T>) -> Result<WindowFunction<T>> {
    let family = SynthesisFamily::for_band(s.t0, s.t_max, s.omega_c, s.phase_tol)?;
    let kernel = s.kernel()?;
    let lead = kernel.map_or(T::zero(), |h| h.width() * lit(0.5));
    let advanced = target.map(|w, v| v * cis(w * lead))?;
    let raw = synthesize_window(&DesiredProfile::Spectral(advanced), s.t_max, &family, s.n_terms)?;
    match kernel {
        Some(h) => convolve(&raw, &h),
        None => Ok(raw),
    }
}

/// Achieved spectral deviation of a synthesized window before smoothing.
pub fn synthesis_deviation<T: Real>(w: &WindowFunction<T>) -> Option<T> {
    match w.form() {
        WindowForm::Synthesized(s) => Some(s.deviation()),
        WindowForm::Noisy { base, .. } => synthesis_deviation(base),
        _ => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MirrorPairSettings<T> {
    pub l: T,
    pub synthesis: SynthesisSettings<T>,
    /// Band window edges sit `taper_margin` outside `[0, omega_c]`, with erf width `taper_width`.
    pub taper_margin: T,
    pub taper_width: T,
    pub taper_points: usize,
    pub probe_start: T,
    pub probe_end: T,
    pub probe_count: usize,
}

impl<T: Real> MirrorPairSettings<T> {
    pub fn desk(l: T, omega_c: T) -> Self {
        Self {
            l,
            synthesis: SynthesisSettings::desk(omega_c),
            taper_margin: lit(3.0),
            taper_width: T::one(),
            taper_points: 40001,
            probe_start: lit(0.5),
            probe_end: lit(6.0),
            probe_count: 550,
        }
    }

    pub fn target(&self, cfg: &FieldConfig<T>) -> Result<SampledFunction<T>> {
        desired_spectrum_mirror_pair(self.l, cfg)?.tapered(self.synthesis.omega_c, self.taper_margin, self.taper_width, self.taper_points)
    }
}

#[derive(Clone, Debug)]
pub struct MirrorPairRun<T> {
    pub window: WindowFunction<T>,
    pub target: SampledFunction<T>,
    pub amplitude: AmplitudeProfile<T>,
    /// `D(L' - L) + D(L' + L)` at the probes.
    pub reference: Vec<Complex<T>>,
    pub correlation: T,
    pub generated: OneParticleState<T>,
    pub desired: OneParticleState<T>,
    pub fidelity: T,
    pub deviation: Option<T>,
}

pub fn run_mirror_pair<T: Real>(settings: &MirrorPairSettings<T>, cfg: &FieldConfig<T>) -> Result<MirrorPairRun<T>> {
    let target = settings.target(cfg)?;
    let window = synthesize_spectral_target(&target, &settings.synthesis)?;
    evaluate_mirror_pair(window, target, settings, cfg)
}

/// Amplitude profile, propagator correlation and state fidelity of `window`
/// against the tapered mirror-pair `target`.
pub fn evaluate_mirror_pair<T: Real>(
    window: WindowFunction<T>,
    target: SampledFunction<T>,
    settings: &MirrorPairSettings<T>,
    cfg: &FieldConfig<T>,
) -> Result<MirrorPairRun<T>> {
    if cfg.dim != 1 {
        return Err(Error::Precondition("the mirror-pair pipeline runs on the line".into()));
    }
    let grid = KGrid::for_band(cfg, settings.synthesis.omega_c)?;
    let probes = probe_midpoints(settings.probe_start, settings.probe_end, settings.probe_count);
    let amplitude = amplitude_profile(&window, &probes, cfg, &grid)?;
    let reference = probes
        .iter()
        .map(|&x| Ok(propagator(x - settings.l, T::zero(), cfg)? + propagator(x + settings.l, T::zero(), cfg)?))
        .collect::<Result<Vec<_>>>()?;
    let correlation = normalized_correlation(&reference, &amplitude.values);
    let generated = generated_state(&window, &SourceWeights::Point, cfg, &grid)?;
    let desired = desired_state(&TargetField::Spectral(target.clone()), cfg, &grid)?;
    let fid = fidelity(&generated, &desired)?;
    Ok(MirrorPairRun {
        deviation: synthesis_deviation(&window),
        window,
        target,
        amplitude,
        reference,
        correlation,
        generated,
        desired,
        fidelity: fid,
    })
}
