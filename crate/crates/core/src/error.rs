use thiserror::Error;

/// Failures surfaced by the numerical routines.
///
/// Magnitudes are carried as `f64` regardless of the working scalar so the
/// error type stays independent of it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("overflow: result magnitude e^{log_magnitude:.3} exceeds the floating range")]
    Overflow { log_magnitude: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("quadrature did not converge after {panels} panels (error estimate {error:e}, tolerance {tolerance:e})")]
    NonConvergence { panels: usize, error: f64, tolerance: f64 },

    #[error("endpoint singularity: t = {t} lies within {distance:e} of the support boundary")]
    EndpointSingularity { t: f64, distance: f64 },

    #[error("phase aliasing between samples {index} and {next}: jump {jump:.4} rad", next = index + 1)]
    Aliasing { index: usize, jump: f64 },

    #[error("smoothing kernel width {width} exceeds t0/20 = {limit}")]
    KernelTooWide { width: f64, limit: f64 },

    #[error("superoscillatory domain too large: delta^2 t0 cosh(A) omega_c = {product:.4} > 0.1")]
    DomainTooLarge { product: f64 },

    #[error("target support needs |t'| up to {required}, but the family only reaches T = {available}")]
    Truncation { required: f64, available: f64 },

    #[error("state has zero norm on the momentum grid")]
    ZeroNorm,

    #[error("momentum grids differ: {0}")]
    GridMismatch(String),

    #[error("zero guard: |j_l(k a0)| = {value:e} at k = {k}")]
    ZeroGuard { k: f64, value: f64 },

    #[error("series tail bound {bound:e} exceeds tolerance {tolerance:e}")]
    SlowDecay { bound: f64, tolerance: f64 },

    #[error("source regions {first} and {second} are separated by {separation}, need more than {required}")]
    Overlap { first: usize, second: usize, separation: f64, required: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
