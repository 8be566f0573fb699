//! Quadrature, Fourier transforms, smoothing and local-frequency estimation.

pub mod fourier;
pub mod frequency;
pub mod kernel;
pub mod quad;
pub mod sampled;

pub use fourier::{fourier_at, fourier_time_to_freq, TimeSignal};
pub use frequency::{desa_frequency, local_frequency, tail_exponent, unwrapped_phase};
pub use kernel::{convolve, SmoothingKernel};
pub use quad::{integrate, integrate_inv_sqrt, integrate_real, QuadOptions, Quadrature};
pub use sampled::{uniform_grid, SampledFunction};
