//! Several independent spin arrays preparing product or entangled states.

use num_complex::Complex;
use rayon::prelude::*;

use super::field::{FieldConfig, KGrid};
use super::rsp::{synthesize_spectral_target, SynthesisSettings};
use super::state::{desired_state, fidelity, generated_state, OneParticleState, SourceWeights, TargetField};
use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Real};
use crate::superosc::WindowFunction;
use crate::transforms::SampledFunction;

/// One array at `site` with source region `[site - extent, site + extent]`.
/// `alternatives` lists the target spectra selectable by postselection.
#[derive(Clone, Debug)]
pub struct ParticleSpec<T> {
    pub site: T,
    pub extent: T,
    pub alternatives: Vec<SampledFunction<T>>,
}

/// Row-major amplitudes `C[l_1, ..., l_M]` over per-array labels.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientTable<T> {
    pub dims: Vec<usize>,
    pub values: Vec<Complex<T>>,
}

impl<T: Real> CoefficientTable<T> {
    pub fn new(dims: Vec<usize>, values: Vec<Complex<T>>) -> Result<Self> {
        let size: usize = dims.iter().product();
        if size != values.len() || dims.is_empty() {
            return Err(Error::Precondition(format!("coefficient table of shape {dims:?} needs {size} entries, got {}", values.len())));
        }
        Ok(Self { dims, values })
    }

    fn labels(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for (slot, &d) in out.iter_mut().zip(&self.dims).rev() {
            *slot = flat % d;
            flat /= d;
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct MultiParticlePlan<T> {
    /// `windows[i][l]` realizes alternative `l` of array `i`.
    pub windows: Vec<Vec<WindowFunction<T>>>,
    pub fidelities: Vec<Vec<T>>,
    /// Product of the first-alternative fidelities.
    pub joint_fidelity: T,
    /// Fidelity of `sum_l C_l (x)_i psi_{i, l_i}` against the same superposition of targets.
    pub entangled_fidelity: Option<T>,
}

/// One synthesis per array and alternative. Arrays must be causally
/// disconnected: gaps between source regions larger than `2 t0`.
pub fn multi_particle_plan<T: Real>(
    particles: &[ParticleSpec<T>],
    coefficients: Option<&CoefficientTable<T>>,
    settings: &SynthesisSettings<T>,
    cfg: &FieldConfig<T>,
    grid: &KGrid<T>,
) -> Result<MultiParticlePlan<T>> {
    let required = lit::<T>(2.0) * settings.t0;
    for i in 0..particles.len() {
        if particles[i].alternatives.is_empty() {
            return Err(Error::Precondition(format!("array {i} has no target")));
        }
        for j in i + 1..particles.len() {
            let (a, b) = (&particles[i], &particles[j]);
            let gap = (a.site - b.site).abs() - a.extent - b.extent;
            if !(gap > required) {
                return Err(Error::Overlap { first: i, second: j, separation: to_f64(gap), required: to_f64(required) });
            }
        }
    }
    if let Some(c) = coefficients {
        let dims: Vec<usize> = particles.iter().map(|p| p.alternatives.len()).collect();
        if c.dims != dims {
            return Err(Error::Precondition(format!("coefficient shape {:?} does not match the alternatives {dims:?}", c.dims)));
        }
    }

    let mut windows = Vec::with_capacity(particles.len());
    let mut generated = Vec::with_capacity(particles.len());
    let mut desired = Vec::with_capacity(particles.len());
    for p in particles {
        let built = p
            .alternatives
            .par_iter()
            .map(|target| {
                let w = synthesize_spectral_target(target, settings)?;
                let g = generated_state(&w, &SourceWeights::Point, cfg, grid)?;
                let d = desired_state(&TargetField::Spectral(target.clone()), cfg, grid)?;
                Ok((w, g, d))
            })
            .collect::<Result<Vec<_>>>()?;
        let (mut ws, mut gs, mut ds) = (Vec::new(), Vec::new(), Vec::new());
        for (w, g, d) in built {
            ws.push(w);
            gs.push(g);
            ds.push(d);
        }
        windows.push(ws);
        generated.push(gs);
        desired.push(ds);
    }

    let fidelities = generated
        .iter()
        .zip(&desired)
        .map(|(gs, ds)| gs.iter().zip(ds).map(|(g, d)| fidelity(g, d)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let joint_fidelity = fidelities.iter().map(|f| f[0]).fold(T::one(), |a, b| a * b);
    let entangled_fidelity = coefficients.map(|c| superposition_fidelity(c, &generated, &desired)).transpose()?;

    Ok(MultiParticlePlan { windows, fidelities, joint_fidelity, entangled_fidelity })
}

/// `<X|Y>` of `sum_l C_l (x)_i x_{i,l_i}` and `sum_l C_l (x)_i y_{i,l_i}`, factorized per array.
fn superposed_inner<T: Real>(c: &CoefficientTable<T>, x: &[Vec<OneParticleState<T>>], y: &[Vec<OneParticleState<T>>]) -> Result<Complex<T>> {
    let overlaps = x
        .iter()
        .zip(y)
        .map(|(xs, ys)| xs.iter().map(|a| ys.iter().map(|b| a.inner(b)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let mut acc = Complex::new(T::zero(), T::zero());
    for (i, ci) in c.values.iter().enumerate() {
        let li = c.labels(i);
        for (j, cj) in c.values.iter().enumerate() {
            let lj = c.labels(j);
            let prod = overlaps.iter().enumerate().fold(Complex::new(T::one(), T::zero()), |p, (m, o)| p * o[li[m]][lj[m]]);
            acc = acc + ci.conj() * cj * prod;
        }
    }
    Ok(acc)
}

fn superposition_fidelity<T: Real>(c: &CoefficientTable<T>, generated: &[Vec<OneParticleState<T>>], desired: &[Vec<OneParticleState<T>>]) -> Result<T> {
    let dg = superposed_inner(c, desired, generated)?;
    let dd = superposed_inner(c, desired, desired)?.re;
    let gg = superposed_inner(c, generated, generated)?.re;
    if !(dd > T::zero() && gg > T::zero()) {
        return Err(Error::ZeroNorm);
    }
    Ok((dg.norm() / (dd.sqrt() * gg.sqrt())).min(T::one()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_are_row_major() {
        let c = CoefficientTable::<f64>::new(vec![2, 3], vec![Complex::new(1.0, 0.0); 6]).unwrap();
        assert_eq!(c.labels(0), vec![0, 0]);
        assert_eq!(c.labels(4), vec![1, 1]);
        assert_eq!(c.labels(5), vec![1, 2]);
        assert!(CoefficientTable::<f64>::new(vec![2, 2], vec![Complex::new(1.0, 0.0); 3]).is_err());
    }

    #[test]
    fn overlapping_sites_rejected() {
        let target = SampledFunction::tabulate(-1.0, 12.0, 101, |_| Complex::new(1.0, 0.0)).unwrap();
        let p = |site| ParticleSpec { site, extent: 0.5, alternatives: vec![target.clone()] };
        let cfg = FieldConfig::new(1.0, 0.0, 1, 0.01).unwrap();
        let grid = KGrid::uniform(1, 10.0, 101).unwrap();
        let r = multi_particle_plan(&[p(0.0), p(2.5)], None, &SynthesisSettings::desk(1.0), &cfg, &grid);
        assert!(matches!(r, Err(Error::Overlap { first: 0, second: 1, .. })));
    }
}
