//! Superoscillatory window functions and remote preparation of
//! Klein-Gordon one-particle states.

pub mod cli;
pub mod error;
pub mod qft;
pub mod scalar;
pub mod specfun;
pub mod spinarray;
pub mod superosc;
pub mod transforms;

pub use error::{Error, Result};
pub use scalar::{Real, ScaledComplex};

pub type Complex64 = num_complex::Complex<f64>;
pub type SuperoscParams64 = superosc::SuperoscParams<f64>;
pub type WindowFunction64 = superosc::WindowFunction<f64>;
pub type SpectralFunction64 = superosc::SpectralFunction<f64>;
pub type SampledFunction64 = transforms::SampledFunction<f64>;
pub type SmoothingKernel64 = transforms::SmoothingKernel<f64>;
pub type Variant64 = superosc::Variant<f64>;
pub type Synthesis64 = superosc::Synthesis<f64>;
pub type SynthesisFamily64 = superosc::SynthesisFamily<f64>;
pub type SuperoscillationReport64 = superosc::SuperoscillationReport<f64>;
pub type FieldConfig64 = qft::FieldConfig<f64>;
pub type KGrid64 = qft::KGrid<f64>;
pub type OneParticleState64 = qft::OneParticleState<f64>;
pub type NoiseSpec64 = qft::NoiseSpec<f64>;
pub type SpinArray64 = spinarray::SpinArray<f64>;
pub type TargetProfile64 = spinarray::TargetProfile<f64>;
pub type ReflectionSeries64 = spinarray::ReflectionSeries<f64>;
