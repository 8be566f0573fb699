use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{from_usize, lit, to_f64, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhaseBranch {
    /// `1/delta^2 = 2 pi m + pi/4`
    Plus,
    /// `1/delta^2 = 2 pi m - pi/4`
    Minus,
}

impl PhaseBranch {
    fn offset<T: Real>(self) -> T {
        match self {
            PhaseBranch::Plus => T::FRAC_PI_4(),
            PhaseBranch::Minus => -T::FRAC_PI_4(),
        }
    }
}

/// `(Delta, delta, A, t0)` of one superoscillatory building block, with
/// `1/delta^2` pinned to `2 pi m +- pi/4`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuperoscParams<T> {
    delta: T,
    a: T,
    t0: T,
    amplitude: T,
    branch: PhaseBranch,
    index: u64,
}

impl<T: Real> SuperoscParams<T> {
    /// Rounds the requested `delta` to the nearest admissible value on `branch`.
    pub fn new(delta: T, a: T, t0: T, amplitude: T, branch: PhaseBranch) -> Result<Self> {
        if !(delta > T::zero()) || !delta.is_finite() {
            return Err(Error::Precondition(format!("delta must be > 0, got {}", to_f64(delta))));
        }
        let target = T::one() / (delta * delta);
        let m = ((target - branch.offset::<T>()) / (lit::<T>(2.0) * T::PI())).round();
        let m = to_f64(m).max(1.0);
        if m > 1e15 {
            return Err(Error::Precondition(format!("delta = {} too small", to_f64(delta))));
        }
        Self::from_index(m as u64, a, t0, amplitude, branch)
    }

    pub fn from_index(index: u64, a: T, t0: T, amplitude: T, branch: PhaseBranch) -> Result<Self> {
        if index < 1 {
            return Err(Error::Precondition("branch index m must be >= 1".into()));
        }
        if !(a >= T::zero()) || !a.is_finite() {
            return Err(Error::Precondition(format!("A must be finite and >= 0, got {}", to_f64(a))));
        }
        if !(t0 > T::zero()) || !t0.is_finite() {
            return Err(Error::Precondition(format!("t0 must be > 0, got {}", to_f64(t0))));
        }
        if !(amplitude > T::zero()) || !amplitude.is_finite() {
            return Err(Error::Precondition(format!("amplitude must be > 0, got {}", to_f64(amplitude))));
        }
        let inv = lit::<T>(2.0) * T::PI() * from_usize::<T>(index as usize) + branch.offset::<T>();
        Ok(Self { delta: T::one() / inv.sqrt(), a, t0, amplitude, branch, index })
    }

    pub fn delta(&self) -> T {
        self.delta
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn t0(&self) -> T {
        self.t0
    }

    pub fn amplitude(&self) -> T {
        self.amplitude
    }

    pub fn branch(&self) -> PhaseBranch {
        self.branch
    }

    /// The integer `m` of `2 pi m +- pi/4`.
    pub fn index(&self) -> u64 {
        self.index
    }

    /// `1/delta^2`, exact from the branch index.
    pub fn inv_delta_sq(&self) -> T {
        lit::<T>(2.0) * T::PI() * from_usize::<T>(self.index as usize) + self.branch.offset::<T>()
    }

    pub fn with_amplitude(mut self, amplitude: T) -> Self {
        self.amplitude = amplitude;
        self
    }

    /// Partner block on the other phase branch with the same `m`.
    pub fn partner(&self) -> Self {
        let branch = match self.branch {
            PhaseBranch::Plus => PhaseBranch::Minus,
            PhaseBranch::Minus => PhaseBranch::Plus,
        };
        let mut p = *self;
        p.branch = branch;
        p.delta = T::one() / p.inv_delta_sq().sqrt();
        p
    }

    /// Largest `omega_c` with `delta^2 cosh(A) t0 omega_c <= 0.1`.
    pub fn domain_end(&self) -> T {
        lit::<T>(0.1) * self.inv_delta_sq() / (self.t0 * self.a.cosh())
    }

    /// `-2 e^{-A} / (t0 delta^2)`, where the Bessel argument turns imaginary.
    pub fn growth_onset_estimate(&self) -> T {
        -lit::<T>(2.0) * (-self.a).exp() * self.inv_delta_sq() / self.t0
    }

    /// Twice the growth-onset distance.
    pub fn omega_pad(&self) -> T {
        lit::<T>(4.0) * (-self.a).exp() * self.inv_delta_sq() / self.t0
    }

    /// Start of the asymptotic `omega'^{-1/2}` tail, past the crossover at
    /// `omega' t0 / 2 ~ cosh(A) / delta^2`.
    pub fn tail_onset(&self) -> T {
        lit::<T>(4.0) * self.a.cosh() * self.inv_delta_sq() / self.t0
    }
}
