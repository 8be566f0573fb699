//! Klein-Gordon vacuum: dispersion, propagator, first-order spin amplitudes,
//! one-particle states, fidelities, success scaling and noise.

pub mod amplitude;
pub mod field;
pub mod multi;
pub mod noise;
pub mod rsp;
pub mod scaling;
pub mod state;

pub use amplitude::{amplitude_profile, amplitude_up, desired_spectrum_mirror_pair, normalized_correlation, probe_midpoints, AmplitudeProfile, MirrorPair};
pub use field::{dispersion, propagator, FieldConfig, KGrid, K_POINTS};
pub use multi::{multi_particle_plan, CoefficientTable, MultiParticlePlan, ParticleSpec};
pub use noise::{causal_leakage, critical_noise, inject_noise, NoiseSpec};
pub use rsp::{evaluate_mirror_pair, run_mirror_pair, synthesize_spectral_target, MirrorPairRun, MirrorPairSettings, SynthesisSettings};
pub use scaling::{success_probability_estimate, SuccessEstimate};
pub use state::{desired_state, fidelity, generated_state, infidelity_tail, OneParticleState, SourceWeights, TargetField};
