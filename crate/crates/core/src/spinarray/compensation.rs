use num_complex::Complex;

use super::SpinArray;
use crate::error::{Error, Result};
use crate::scalar::{from_usize, lit, Real};
use crate::transforms::SampledFunction;

const SAMPLES_PER_CELL: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct Compensation<T> {
    pub spins: SpinArray<T>,
    /// `sup |residual + compensation|` over the cell interiors.
    pub sup_error: T,
    /// `N ln(1/2)`: every extra postselected spin costs at least one bit.
    pub log_penalty: T,
}

/// `N` spins at the centres of equal cells of the residual's interval. Each
/// carries minus the even part of the residual about its centre, cut off at
/// the cell edge, which leaves only the odd part inside every cell.
pub fn compensation_spins<T: Real>(residual: &SampledFunction<T>, n: usize) -> Result<Compensation<T>> {
    if n < 1 {
        return Err(Error::Precondition("need at least one compensation spin".into()));
    }
    let (lo, hi) = (residual.start(), residual.end());
    let h = (hi - lo) / from_usize::<T>(n);
    let half = h * lit(0.5);
    let centres: Vec<T> = (0..n).map(|j| lo + (from_usize::<T>(j) + lit(0.5)) * h).collect();
    let points = (residual.len() / n + 2).max(33);
    let profiles = centres
        .iter()
        .map(|&c| {
            SampledFunction::tabulate(T::zero(), half, points, |xi| {
                -(residual.interpolate(c + xi) + residual.interpolate(c - xi)) * lit::<T>(0.5)
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let spins = SpinArray::on_line(&centres, profiles, lo, hi)?;

    let mut sup = T::zero();
    for &c in &centres {
        for i in 0..SAMPLES_PER_CELL {
            let x = c - half + h * (from_usize::<T>(i) + lit(0.5)) / from_usize::<T>(SAMPLES_PER_CELL);
            let e: Complex<T> = residual.interpolate(x) + spins.field_1d(x);
            sup = sup.max(e.norm());
        }
    }
    Ok(Compensation { spins, sup_error: sup, log_penalty: -from_usize::<T>(n) * lit::<T>(2.0).ln() })
}
