use serde::Serialize;

use crate::scalar::{lit, Real};
use crate::superosc::SuperoscParams;

/// Logarithmic success-probability estimate; only ratios carry meaning.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SuccessEstimate<T> {
    /// `ln Delta = -sinh(A) / delta^2`, the amplitude suppression of the block.
    pub log_delta: T,
    /// `-omega_c L^2 / t0`, the same suppression once `delta^2 ~ 1/(omega_c T)` and `T ~ L^2/t0`.
    pub log_delta_scaling: T,
    /// `ln P = 2 ln Delta` in the scaling form.
    pub log_p: T,
    /// `t0 (cosh A + 1)/2 >= L`: the block reaches the target separation.
    pub causally_covered: bool,
}

pub fn success_probability_estimate<T: Real>(p: &SuperoscParams<T>, l: T, omega_c: T) -> SuccessEstimate<T> {
    let log_delta = -p.a().sinh() * p.inv_delta_sq();
    let log_delta_scaling = -omega_c * l * l / p.t0();
    SuccessEstimate {
        log_delta,
        log_delta_scaling,
        log_p: lit::<T>(2.0) * log_delta_scaling,
        causally_covered: p.t0() * (p.a().cosh() + T::one()) * lit(0.5) >= l,
    }
}
