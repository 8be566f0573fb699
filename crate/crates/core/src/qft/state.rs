use num_complex::Complex;
use rayon::prelude::*;

use super::field::{dispersion, FieldConfig, KGrid};
use crate::error::{Error, Result};
use crate::scalar::{cis, lit, Real};
use crate::specfun::radial_kernel;
use crate::superosc::WindowFunction;
use crate::transforms::{integrate, QuadOptions, SampledFunction};

/// Normalized one-particle state sampled on a momentum grid. Amplitudes
/// include the `1/sqrt(2 omega)` mode factor.
#[derive(Clone, Debug, PartialEq)]
pub struct OneParticleState<T> {
    grid: KGrid<T>,
    amplitudes: Vec<Complex<T>>,
    norm: T,
}

impl<T: Real> OneParticleState<T> {
    /// Normalizes `amplitudes`; `norm` keeps the pre-normalization value of
    /// `sqrt(sum_k w_k |a_k|^2)`.
    pub fn new(grid: KGrid<T>, amplitudes: Vec<Complex<T>>) -> Result<Self> {
        if amplitudes.len() != grid.len() {
            return Err(Error::GridMismatch(format!("{} amplitudes for {} momenta", amplitudes.len(), grid.len())));
        }
        let norm = quadrature_norm(&grid, &amplitudes);
        if !(norm > T::zero()) {
            return Err(Error::ZeroNorm);
        }
        if !norm.is_finite() {
            return Err(Error::Overflow { log_magnitude: f64::INFINITY });
        }
        let amplitudes = amplitudes.into_iter().map(|a| a / norm).collect();
        Ok(Self { grid, amplitudes, norm })
    }

    pub fn grid(&self) -> &KGrid<T> {
        &self.grid
    }

    pub fn k_grid(&self) -> &[T] {
        self.grid.k()
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn norm(&self) -> T {
        self.norm
    }

    /// `<self|other>` with the grid measure.
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        same_grid(&self.grid, &other.grid)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .zip(self.grid.weights())
            .fold(Complex::new(T::zero(), T::zero()), |acc, ((a, b), &w)| acc + a.conj() * b * w))
    }

    /// Position-space wavefunction `psi(x) = sum_k w_k a_k e^{ikx}` (one dimension).
    pub fn position_amplitude(&self, x: T) -> Result<Complex<T>> {
        if self.grid.dim() != 1 {
            return Err(Error::Precondition("position amplitudes are available for d = 1".into()));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(self.grid.k())
            .zip(self.grid.weights())
            .fold(Complex::new(T::zero(), T::zero()), |acc, ((a, &k), &w)| acc + a * cis(k * x) * w))
    }
}

fn quadrature_norm<T: Real>(grid: &KGrid<T>, amps: &[Complex<T>]) -> T {
    amps.iter().zip(grid.weights()).map(|(a, &w)| a.norm_sqr() * w).sum::<T>().sqrt()
}

fn same_grid<T: Real>(a: &KGrid<T>, b: &KGrid<T>) -> Result<()> {
    if a.dim() != b.dim() || a.len() != b.len() {
        return Err(Error::GridMismatch(format!("d = {} with {} nodes vs d = {} with {} nodes", a.dim(), a.len(), b.dim(), b.len())));
    }
    let tol = lit::<T>(1e-12) * a.k_max().abs().max(T::one());
    if let Some(i) = a.k().iter().zip(b.k()).position(|(x, y)| (*x - *y).abs() > tol) {
        return Err(Error::GridMismatch(format!("nodes differ at index {i}")));
    }
    Ok(())
}

/// Spatial distribution of the coupled spins.
#[derive(Clone, Debug, PartialEq)]
pub enum SourceWeights<T> {
    Point,
    /// Point spins `(x_i, w_i)` on the line, `W~(k) = sum w_i e^{-i k x_i}`.
    Points(Vec<(T, Complex<T>)>),
    /// Continuous weight `W(x)` on the line, `W~(k) = int W(x) e^{-ikx} dx`.
    Profile(SampledFunction<T>),
}

impl<T: Real> SourceWeights<T> {
    pub fn transform(&self, k: T, dim: usize) -> Result<Complex<T>> {
        if dim != 1 && !matches!(self, Self::Point) {
            return Err(Error::Precondition("extended sources are supported on the line only".into()));
        }
        Ok(match self {
            Self::Point => Complex::new(T::one(), T::zero()),
            Self::Points(ps) => ps.iter().fold(Complex::new(T::zero(), T::zero()), |acc, (x, w)| acc + w * cis(-k * *x)),
            Self::Profile(f) => f.fourier(-k),
        })
    }
}

/// `eps~(omega'(k)) W~(k) / sqrt(2 omega(k))`, normalized.
pub fn generated_state<T: Real>(
    w: &WindowFunction<T>,
    weights: &SourceWeights<T>,
    cfg: &FieldConfig<T>,
    grid: &KGrid<T>,
) -> Result<OneParticleState<T>> {
    generated_state_from_spectrum(|wp| w.spectrum(wp), weights, cfg, grid)
}

/// [`generated_state`] for an arbitrary spectrum `omega' -> eps~(omega')`.
pub fn generated_state_from_spectrum<T, F>(
    spectrum: F,
    weights: &SourceWeights<T>,
    cfg: &FieldConfig<T>,
    grid: &KGrid<T>,
) -> Result<OneParticleState<T>>
where
    T: Real,
    F: Fn(T) -> Result<Complex<T>> + Sync,
{
    let amps = grid
        .k()
        .par_iter()
        .map(|&k| {
            let mode = (lit::<T>(2.0) * dispersion(k, cfg)).sqrt();
            Ok(spectrum(cfg.omega_prime(k))? * weights.transform(k, grid.dim())? / mode)
        })
        .collect::<Result<Vec<_>>>()?;
    OneParticleState::new(grid.clone(), amps)
}

/// Position-space target of a remote preparation.
#[derive(Clone, Debug, PartialEq)]
pub enum TargetField<T> {
    PointSource,
    /// `F(x)` on the line, or the radial profile `f(r)` for `d > 1`.
    Position(SampledFunction<T>),
    /// `F~` given directly as a function of `omega'`.
    Spectral(SampledFunction<T>),
}

/// `F~(k) / sqrt(2 omega(k))`, normalized.
pub fn desired_state<T: Real>(profile: &TargetField<T>, cfg: &FieldConfig<T>, grid: &KGrid<T>) -> Result<OneParticleState<T>> {
    let amps = grid
        .k()
        .par_iter()
        .map(|&k| {
            let f = match profile {
                TargetField::PointSource => Complex::new(T::one(), T::zero()),
                TargetField::Position(f) if grid.dim() == 1 => f.fourier(-k),
                TargetField::Position(f) => radial_transform(f, k, grid.dim())?,
                TargetField::Spectral(g) => g.interpolate(cfg.omega_prime(k)),
            };
            Ok(f / (lit::<T>(2.0) * dispersion(k, cfg)).sqrt())
        })
        .collect::<Result<Vec<_>>>()?;
    OneParticleState::new(grid.clone(), amps)
}

pub(crate) fn radial_transform<T: Real>(f: &SampledFunction<T>, k: T, dim: usize) -> Result<Complex<T>> {
    if f.start() < T::zero() {
        return Err(Error::Precondition("radial profiles live on r >= 0".into()));
    }
    let opts = QuadOptions::with_tol(lit(1e-10)).rate(k).breaks(f.grid().to_vec());
    let q = integrate(
        |r| match radial_kernel(dim, k, r) {
            Ok(kr) => f.interpolate(r) * kr,
            Err(_) => Complex::new(T::nan(), T::nan()),
        },
        f.start(),
        f.end(),
        &opts,
    )?;
    Ok(q.value)
}

/// `|<a|b>| / (|a| |b|)`.
pub fn fidelity<T: Real>(a: &OneParticleState<T>, b: &OneParticleState<T>) -> Result<T> {
    let ip = a.inner(b)?;
    let na = a.inner(a)?.re.sqrt();
    let nb = b.inner(b)?.re.sqrt();
    Ok((ip.norm() / (na * nb)).min(T::one()))
}

/// Infidelity estimate `(1/omega_c) int_{omega'(k) > omega_c} |F~|^2`.
pub fn infidelity_tail<T: Real>(target: &OneParticleState<T>, omega_c: T, cfg: &FieldConfig<T>) -> T {
    let total: T = target.amplitudes().iter().zip(target.grid().weights()).map(|(a, &w)| a.norm_sqr() * w).sum();
    let tail: T = target
        .amplitudes()
        .iter()
        .zip(target.k_grid())
        .zip(target.grid().weights())
        .filter(|((_, &k), _)| cfg.omega_prime(k) > omega_c)
        .map(|((a, _), &w)| a.norm_sqr() * w)
        .sum();
    tail / (total * omega_c)
}
