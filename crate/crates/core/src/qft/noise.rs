use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use super::field::{FieldConfig, KGrid};
use super::state::{generated_state, SourceWeights};
use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Real};
use crate::superosc::WindowFunction;
use crate::transforms::{uniform_grid, SampledFunction};

/// Positions sampled when measuring light-cone leakage.
pub const LEAKAGE_POINTS: usize = 1201;

/// Additive coupling noise `nu(t) = amplitude * profile(t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct NoiseSpec<T> {
    pub amplitude: T,
    pub profile: SampledFunction<T>,
    pub seed: u64,
}

impl<T: Real> NoiseSpec<T> {
    pub fn new(amplitude: T, profile: SampledFunction<T>, seed: u64) -> Result<Self> {
        if !(amplitude >= T::zero()) {
            return Err(Error::Precondition(format!("noise amplitude must be >= 0, got {}", to_f64(amplitude))));
        }
        Ok(Self { amplitude, profile, seed })
    }

    /// Complex Gaussian values at `nodes + 1` equispaced points of `[-t0, 0]`,
    /// pinned to zero at both ends and scaled to unit peak modulus.
    pub fn generated(t0: T, nodes: usize, amplitude: T, seed: u64) -> Result<Self> {
        if nodes < 2 {
            return Err(Error::Precondition("generated noise needs at least 2 nodes".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut values: Vec<Complex<T>> = (0..=nodes)
            .map(|_| {
                let re: f64 = StandardNormal.sample(&mut rng);
                let im: f64 = StandardNormal.sample(&mut rng);
                Complex::new(lit(re), lit(im))
            })
            .collect();
        values[0] = Complex::new(T::zero(), T::zero());
        values[nodes] = Complex::new(T::zero(), T::zero());
        let peak = values.iter().map(|v| v.norm()).fold(T::zero(), T::max);
        for v in &mut values {
            *v = *v / peak;
        }
        let profile = SampledFunction::new(uniform_grid(-t0, T::zero(), nodes + 1)?, values)?;
        Self::new(amplitude, profile, seed)
    }
}

/// `epsilon + nu`; the noise profile must sit inside `[-t0, 0]`.
pub fn inject_noise<T: Real>(w: &WindowFunction<T>, noise: &NoiseSpec<T>) -> Result<WindowFunction<T>> {
    let t0 = w.t0();
    let slack = lit::<T>(1e-12) * t0;
    if noise.profile.start() < -t0 - slack || noise.profile.end() > slack {
        return Err(Error::Precondition("noise profile must be supported inside [-t0, 0]".into()));
    }
    if noise.amplitude == T::zero() || noise.profile.values().iter().all(|v| v.norm() == T::zero()) {
        return Ok(w.clone());
    }
    let scaled = noise.profile.map(|_, v| v * noise.amplitude)?;
    Ok(w.clone().with_noise(scaled))
}

/// Noise amplitude at which `amplitude * profile` carries as much spectral
/// weight on `[0, omega_c]` as the window itself.
pub fn critical_noise<T: Real>(w: &WindowFunction<T>, profile: &SampledFunction<T>) -> Result<T> {
    let omega_c = w.omega_c().unwrap_or(lit::<T>(10.0) / w.t0());
    let grid = uniform_grid(T::zero(), omega_c, 401)?;
    let pairs = grid
        .par_iter()
        .map(|&om| w.spectrum(om).map(|z| (z.norm_sqr(), profile.fourier(om).norm_sqr())))
        .collect::<Result<Vec<(T, T)>>>()?;
    let (sig, noise) = pairs.into_iter().fold((T::zero(), T::zero()), |(a, b), (x, y)| (a + x, b + y));
    if !(noise > T::zero()) {
        return Err(Error::ZeroNorm);
    }
    Ok((sig / noise).sqrt())
}

/// Fraction of `|psi(x)|^2` inside the source light cone `|x| <= t0`, over
/// `|x| <= 8 max(L, t0)`, for the state a single point spin generates.
pub fn causal_leakage<T: Real>(w: &WindowFunction<T>, l: T, cfg: &FieldConfig<T>, grid: &KGrid<T>) -> Result<T> {
    let state = generated_state(w, &SourceWeights::Point, cfg, grid)?;
    let t0 = w.t0();
    let reach = lit::<T>(8.0) * l.max(t0);
    let xs = uniform_grid(-reach, reach, LEAKAGE_POINTS)?;
    let dens = xs
        .par_iter()
        .map(|&x| state.position_amplitude(x).map(|p| p.norm_sqr()))
        .collect::<Result<Vec<T>>>()?;
    let total: T = dens.iter().copied().sum();
    let inside: T = xs.iter().zip(&dens).filter(|(x, _)| x.abs() <= t0).map(|(_, d)| *d).sum();
    if !(total > T::zero()) {
        return Err(Error::ZeroNorm);
    }
    Ok(inside / total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superosc::{PhaseBranch, SuperoscParams};

    fn window() -> WindowFunction<f64> {
        WindowFunction::closed_form(SuperoscParams::from_index(1, 1.0, 1.0, 1.0, PhaseBranch::Plus).unwrap())
    }

    #[test]
    fn generated_noise_is_seeded() {
        let a = NoiseSpec::<f64>::generated(1.0, 32, 1.0, 7).unwrap();
        let b = NoiseSpec::<f64>::generated(1.0, 32, 1.0, 7).unwrap();
        let c = NoiseSpec::<f64>::generated(1.0, 32, 1.0, 8).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.profile, c.profile);
        let peak = a.profile.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
        assert!((peak - 1.0).abs() < 1e-15);
        assert_eq!(a.profile.values()[0], Complex::new(0.0, 0.0));
    }

    #[test]
    fn zero_noise_is_identity() {
        let w = window();
        let n = NoiseSpec::generated(1.0, 32, 0.0, 1).unwrap();
        let v = inject_noise(&w, &n).unwrap();
        assert_eq!(v.spectrum(2.0).unwrap(), w.spectrum(2.0).unwrap());
    }

    #[test]
    fn noise_adds_pointwise() {
        let w = window();
        let n = NoiseSpec::generated(1.0, 32, 0.3, 1).unwrap();
        let v = inject_noise(&w, &n).unwrap();
        for t in [-0.8, -0.5, -0.13] {
            let want = w.value(t).unwrap() + n.profile.interpolate(t) * 0.3;
            assert!((v.value(t).unwrap() - want).norm() < 1e-12);
        }
        let om = 3.0;
        assert!((v.spectrum(om).unwrap() - w.spectrum(om).unwrap() - n.profile.fourier(om) * 0.3).norm() < 1e-12);
    }

    #[test]
    fn noise_outside_support_rejected() {
        let f = SampledFunction::tabulate(-2.0, 0.0, 5, |_| Complex::new(1.0, 0.0)).unwrap();
        let n = NoiseSpec::new(1.0, f, 0).unwrap();
        assert!(inject_noise(&window(), &n).is_err());
    }
}
