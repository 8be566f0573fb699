//! Spin arrays whose summed radial profiles realize a target field profile.

pub mod compensation;
pub mod reflection;
pub mod shell;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};
use crate::transforms::SampledFunction;

pub use compensation::{compensation_spins, Compensation};
pub use reflection::{reflection_series_weights, DecayClass, ReflectionSeries, TargetProfile};
pub use shell::{radial_weight_to_spectral, ylm_shell_condition, RadialWeight};

/// Region `O_1` holding every spin.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Region<T> {
    Interval { lo: T, hi: T },
    Ball { center: [T; 3], radius: T },
}

impl<T: Real> Region<T> {
    pub fn contains(&self, p: [T; 3]) -> bool {
        let slack = lit::<T>(1e-12);
        match *self {
            Region::Interval { lo, hi } => p[0] >= lo - slack && p[0] <= hi + slack,
            Region::Ball { center, radius } => distance(p, center) <= radius * (T::one() + slack),
        }
    }
}

fn distance<T: Real>(a: [T; 3], b: [T; 3]) -> T {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

/// Spins at `positions`, spin `i` contributing `profiles[i](|r - r_i|)`.
/// Profiles are functions of the distance only, so each contribution is
/// symmetric under reflection about its spin.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinArray<T> {
    dim: usize,
    positions: Vec<[T; 3]>,
    profiles: Vec<SampledFunction<T>>,
    region: Region<T>,
}

impl<T: Real> SpinArray<T> {
    pub fn new(dim: usize, positions: Vec<[T; 3]>, profiles: Vec<SampledFunction<T>>, region: Region<T>) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::Precondition(format!("dimension {dim} not in 1..=3")));
        }
        if positions.len() != profiles.len() {
            return Err(Error::Precondition(format!("{} positions but {} profiles", positions.len(), profiles.len())));
        }
        if let Some(i) = positions.iter().position(|&p| !region.contains(p)) {
            return Err(Error::Precondition(format!("spin {i} lies outside its region")));
        }
        if profiles.iter().any(|f| f.start() != T::zero()) {
            return Err(Error::Precondition("spin profiles must start at xi = 0".into()));
        }
        Ok(Self { dim, positions, profiles, region })
    }

    /// Spins on a line.
    pub fn on_line(positions: &[T], profiles: Vec<SampledFunction<T>>, lo: T, hi: T) -> Result<Self> {
        let pos = positions.iter().map(|&x| [x, T::zero(), T::zero()]).collect();
        Self::new(1, pos, profiles, Region::Interval { lo, hi })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn positions(&self) -> &[[T; 3]] {
        &self.positions
    }

    pub fn profiles(&self) -> &[SampledFunction<T>] {
        &self.profiles
    }

    pub fn region(&self) -> Region<T> {
        self.region
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// `sum_i alpha_i f_i(|r - r_i|)`.
    pub fn field(&self, r: [T; 3]) -> Complex<T> {
        self.positions
            .iter()
            .zip(&self.profiles)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (&p, f)| acc + f.interpolate(distance(r, p)))
    }

    pub fn field_1d(&self, x: T) -> Complex<T> {
        self.field([x, T::zero(), T::zero()])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bump() -> SampledFunction<f64> {
        SampledFunction::tabulate(0.0, 1.0, 11, |xi| Complex::new(1.0 - xi, 0.0)).unwrap()
    }

    #[test]
    fn contributions_are_reflection_symmetric() {
        let s = SpinArray::on_line(&[0.5], vec![bump()], -1.0, 1.0).unwrap();
        for &d in &[0.0, 0.2, 0.7, 1.3] {
            assert_eq!(s.field_1d(0.5 + d), s.field_1d(0.5 - d));
        }
        assert_eq!(s.field_1d(2.0), Complex::new(0.0, 0.0));
    }

    #[test]
    fn rejects_spins_outside_region() {
        assert!(SpinArray::on_line(&[1.5], vec![bump()], -1.0, 1.0).is_err());
        let ball = Region::Ball { center: [0.0; 3], radius: 1.0 };
        assert!(SpinArray::new(3, vec![[0.0, 0.0, 1.0]], vec![bump()], ball).is_ok());
        assert!(SpinArray::new(3, vec![[0.0, 1.0, 1.0]], vec![bump()], ball).is_err());
    }
}
