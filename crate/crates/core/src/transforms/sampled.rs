use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::{cis, from_usize, is_finite_c, lit, to_f64, Real};

/// Complex samples on a strictly increasing real grid, read as the
/// piecewise-linear interpolant of the samples.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledFunction<T> {
    grid: Vec<T>,
    values: Vec<Complex<T>>,
}

impl<T: Real> SampledFunction<T> {
    pub fn new(grid: Vec<T>, values: Vec<Complex<T>>) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::GridMismatch(format!("{} abscissae but {} values", grid.len(), values.len())));
        }
        if grid.len() < 2 {
            return Err(Error::Precondition("a sampled function needs at least 2 points".into()));
        }
        if let Some(i) = grid.windows(2).position(|w| !(w[0] < w[1])) {
            return Err(Error::Precondition(format!("grid not strictly increasing at index {i}")));
        }
        if grid.iter().any(|x| !x.is_finite()) || values.iter().any(|v| !is_finite_c(*v)) {
            return Err(Error::Domain("sampled function contains non-finite entries".into()));
        }
        Ok(Self { grid, values })
    }

    /// Samples `f` on `n` uniform points spanning `[a, b]`.
    pub fn tabulate<F: Fn(T) -> Complex<T>>(a: T, b: T, n: usize, f: F) -> Result<Self> {
        let grid = uniform_grid(a, b, n)?;
        let values = grid.iter().map(|&x| f(x)).collect();
        Self::new(grid, values)
    }

    /// Fallible [`tabulate`](Self::tabulate); points are evaluated in parallel.
    pub fn tabulate_try<F>(a: T, b: T, n: usize, f: F) -> Result<Self>
    where
        F: Fn(T) -> Result<Complex<T>> + Sync,
    {
        let grid = uniform_grid(a, b, n)?;
        let values = grid.par_iter().map(|&x| f(x)).collect::<Result<Vec<_>>>()?;
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &[T] {
        &self.grid
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn start(&self) -> T {
        self.grid[0]
    }

    pub fn end(&self) -> T {
        self.grid[self.grid.len() - 1]
    }

    pub fn map<F: Fn(T, Complex<T>) -> Complex<T>>(&self, f: F) -> Result<Self> {
        let values = self.grid.iter().zip(&self.values).map(|(&x, &v)| f(x, v)).collect();
        Self::new(self.grid.clone(), values)
    }

    /// Linear interpolation; zero outside the sampled interval.
    pub fn interpolate(&self, x: T) -> Complex<T> {
        let n = self.grid.len();
        if x < self.grid[0] || x > self.grid[n - 1] {
            return Complex::new(T::zero(), T::zero());
        }
        let j = match self.grid.partition_point(|&g| g <= x) {
            0 => 0,
            p if p >= n => n - 2,
            p => p - 1,
        };
        let (x0, x1) = (self.grid[j], self.grid[j + 1]);
        let s = (x - x0) / (x1 - x0);
        self.values[j] * (T::one() - s) + self.values[j + 1] * s
    }

    /// Exact integral of the interpolant.
    pub fn integral(&self) -> Complex<T> {
        self.segments().fold(Complex::new(T::zero(), T::zero()), |acc, (h, a, b)| acc + (a + b) * (h * lit(0.5)))
    }

    /// Exact `int |f|^2` of the interpolant.
    pub fn norm_sq(&self) -> T {
        self.segments()
            .map(|(h, a, b)| h / lit(3.0) * (a.norm_sqr() + (a * b.conj()).re + b.norm_sqr()))
            .sum()
    }

    /// Exact `int f(x) e^{i omega x} dx` of the interpolant.
    pub fn fourier(&self, omega: T) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for j in 0..self.grid.len() - 1 {
            let h = self.grid[j + 1] - self.grid[j];
            let (p0, p1) = segment_moments(omega * h);
            let a = self.values[j];
            let slope = self.values[j + 1] - a;
            acc = acc + cis(omega * self.grid[j]) * (a * p0 + slope * p1) * h;
        }
        acc
    }

    fn segments(&self) -> impl Iterator<Item = (T, Complex<T>, Complex<T>)> + '_ {
        self.grid
            .windows(2)
            .zip(self.values.windows(2))
            .map(|(g, v)| (g[1] - g[0], v[0], v[1]))
    }
}

/// `(int_0^1 e^{i th u} du, int_0^1 u e^{i th u} du)`.
fn segment_moments<T: Real>(theta: T) -> (Complex<T>, Complex<T>) {
    let i = Complex::new(T::zero(), T::one());
    if theta.abs() < lit(0.25) {
        let it = i * theta;
        let mut pow = Complex::new(T::one(), T::zero());
        let mut fact = T::one();
        let mut p0 = Complex::new(T::zero(), T::zero());
        let mut p1 = Complex::new(T::zero(), T::zero());
        for k in 0..14usize {
            if k > 0 {
                pow = pow * it;
                fact = fact * from_usize::<T>(k);
            }
            p0 = p0 + pow / (fact * from_usize::<T>(k + 1));
            p1 = p1 + pow / (fact * from_usize::<T>(k + 2));
        }
        return (p0, p1);
    }
    let e = cis(theta);
    let one = Complex::new(T::one(), T::zero());
    let p0 = (e - one) / (i * theta);
    let p1 = e / (i * theta) + (e - one) / (theta * theta);
    (p0, p1)
}

pub fn uniform_grid<T: Real>(a: T, b: T, n: usize) -> Result<Vec<T>> {
    if n < 2 || !(a < b) {
        return Err(Error::Precondition(format!(
            "uniform grid needs n >= 2 and a < b (n = {n}, [{}, {}])",
            to_f64(a),
            to_f64(b)
        )));
    }
    let h = (b - a) / from_usize::<T>(n - 1);
    Ok((0..n).map(|i| if i + 1 == n { b } else { a + h * from_usize::<T>(i) }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn unit_box(n: usize) -> SampledFunction<f64> {
        SampledFunction::tabulate(-1.0, 0.0, n, |_| Complex::new(1.0, 0.0)).unwrap()
    }

    #[test]
    fn validation() {
        assert!(SampledFunction::new(vec![0.0], vec![Complex::new(1.0, 0.0)]).is_err());
        assert!(SampledFunction::new(vec![0.0, 0.0], vec![Complex::new(1.0, 0.0); 2]).is_err());
        assert!(SampledFunction::new(vec![0.0, 1.0], vec![Complex::new(1.0, 0.0)]).is_err());
    }

    #[test]
    fn box_transform() {
        let b = unit_box(17);
        assert!((b.fourier(0.0) - Complex::new(1.0, 0.0)).norm() < 1e-15);
        assert!(b.fourier(2.0 * PI).norm() < 1e-12);
        let w = 10.0;
        let want = Complex::new(f64::sin(w), f64::cos(w) - 1.0) / w;
        assert!((b.fourier(w) - want).norm() < 1e-13);
    }

    #[test]
    fn linear_ramp_transform_matches_closed_form() {
        let f = SampledFunction::tabulate(0.0, 1.0, 5, |t| Complex::new(t, 0.0)).unwrap();
        for &w in &[0.05, 0.3, 3.0, 40.0] {
            let i = Complex::new(0.0, 1.0);
            let e = Complex::new(0.0, w).exp();
            let want = e / (i * w) + (e - 1.0) / (w * w);
            assert!((f.fourier(w) - want).norm() < 1e-11, "w={w}");
        }
    }

    #[test]
    fn interpolation_and_moments() {
        let f = SampledFunction::<f64>::new(vec![0.0, 1.0, 3.0], vec![Complex::new(0.0, 0.0), Complex::new(2.0, 0.0), Complex::new(0.0, 2.0)]).unwrap();
        assert_eq!(f.interpolate(0.5), Complex::new(1.0, 0.0));
        assert_eq!(f.interpolate(2.0), Complex::new(1.0, 1.0));
        assert_eq!(f.interpolate(3.5), Complex::new(0.0, 0.0));
        assert!((f.integral() - Complex::new(3.0, 2.0)).norm() < 1e-15);
        // int_0^1 (2x)^2 + int_1^3 |(2 - (x-1), (x-1))|^2 dx
        assert!((f.norm_sq() - (4.0 / 3.0 + 16.0 / 3.0)).abs() < 1e-13);
    }
}
