use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::qft::{FieldConfig, MirrorPairSettings, SynthesisSettings};
use crate::superosc::{PhaseBranch, SuperoscParams, VariantKind};

/// Sweeps with more grid points than this are rejected.
pub const MAX_SWEEP_POINTS: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Experiment {
    Window,
    Report,
    Rsp1d,
    Shell3d,
    Appendix,
    Sweep,
    Noise,
}

impl Experiment {
    pub fn name(&self) -> &'static str {
        match self {
            Experiment::Window => "window",
            Experiment::Report => "report",
            Experiment::Rsp1d => "rsp1d",
            Experiment::Shell3d => "shell3d",
            Experiment::Appendix => "appendix",
            Experiment::Sweep => "sweep",
            Experiment::Noise => "noise",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    #[serde(default)]
    pub window: WindowSpec,
    #[serde(default = "default_field")]
    pub field: FieldConfig<f64>,
    #[serde(default)]
    pub grid: GridSpec,
    #[serde(default)]
    pub rsp: RspSpec,
    #[serde(default)]
    pub shell: ShellSpec,
    #[serde(default)]
    pub appendix: AppendixSpec,
    #[serde(default)]
    pub noise: NoiseSweepSpec,
    #[serde(default)]
    pub sweep: SweepSpec,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub output: Option<PathBuf>,
}

fn default_field() -> FieldConfig<f64> {
    FieldConfig { mass: 1.0, gap: 0.0, dim: 1, coupling: 0.01 }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelSpec {
    pub width: f64,
    pub order: usize,
}

/// Superoscillatory block; `index` takes precedence over `delta`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WindowSpec {
    pub delta: f64,
    pub index: Option<u64>,
    pub a: f64,
    pub t0: f64,
    pub amplitude: f64,
    pub branch: PhaseBranch,
    pub variant: Option<VariantKind>,
    pub kernel: Option<KernelSpec>,
}

impl Default for WindowSpec {
    fn default() -> Self {
        Self {
            delta: 0.2,
            index: None,
            a: 7.5,
            t0: 1.0,
            amplitude: 0.1,
            branch: PhaseBranch::Plus,
            variant: None,
            kernel: None,
        }
    }
}

impl WindowSpec {
    pub fn params(&self) -> crate::Result<SuperoscParams<f64>> {
        match self.index {
            Some(i) => SuperoscParams::from_index(i, self.a, self.t0, self.amplitude, self.branch),
            None => SuperoscParams::new(self.delta, self.a, self.t0, self.amplitude, self.branch),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridSpec {
    /// Rows of the window and report tables.
    pub points: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { points: 2001 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RspSpec {
    pub l: f64,
    pub omega_c: f64,
    pub t0: f64,
    pub t_max: f64,
    pub phase_tol: f64,
    pub n_terms: usize,
    pub kernel_width: f64,
    pub kernel_order: usize,
    pub probe_start: f64,
    pub probe_end: f64,
    pub probe_count: usize,
}

impl Default for RspSpec {
    fn default() -> Self {
        let d = MirrorPairSettings::<f64>::desk(2.0, 10.0);
        Self {
            l: d.l,
            omega_c: d.synthesis.omega_c,
            t0: d.synthesis.t0,
            t_max: d.synthesis.t_max,
            phase_tol: d.synthesis.phase_tol,
            n_terms: d.synthesis.n_terms,
            kernel_width: d.synthesis.kernel_width,
            kernel_order: d.synthesis.kernel_order,
            probe_start: d.probe_start,
            probe_end: d.probe_end,
            probe_count: d.probe_count,
        }
    }
}

impl RspSpec {
    pub fn settings(&self) -> MirrorPairSettings<f64> {
        let mut s = MirrorPairSettings::desk(self.l, self.omega_c);
        s.synthesis = SynthesisSettings {
            t0: self.t0,
            t_max: self.t_max,
            omega_c: self.omega_c,
            phase_tol: self.phase_tol,
            n_terms: self.n_terms,
            kernel_width: self.kernel_width,
            kernel_order: self.kernel_order,
        };
        s.probe_start = self.probe_start;
        s.probe_end = self.probe_end;
        s.probe_count = self.probe_count;
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ShellSpec {
    pub l: usize,
    pub a0: f64,
    pub r: f64,
    pub t0: f64,
    pub omega_c: f64,
    pub points: usize,
}

impl Default for ShellSpec {
    fn default() -> Self {
        Self { l: 0, a0: 0.5, r: 3.0, t0: 1.0, omega_c: 3.0, points: 256 }
    }
}

/// Gaussian target for the two-spin reflection construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AppendixSpec {
    pub a: f64,
    pub center: f64,
    pub width: f64,
    pub n_max: usize,
    pub tolerance: f64,
    pub spins: Vec<usize>,
    pub residual_points: usize,
    /// Table rows cover `[-span, span]`.
    pub span: f64,
    pub points: usize,
}

impl Default for AppendixSpec {
    fn default() -> Self {
        Self {
            a: 1.0,
            center: 2.5,
            width: 0.5,
            n_max: 8,
            tolerance: 1e-10,
            spins: vec![2, 4, 8, 16, 32],
            residual_points: 2001,
            span: 8.0,
            points: 1601,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NoiseSweepSpec {
    pub l: f64,
    pub omega_c: f64,
    pub t_max: f64,
    pub n_terms: usize,
    pub nodes: usize,
    /// Noise amplitudes in units of `nu_c`.
    pub factors: Vec<f64>,
}

impl Default for NoiseSweepSpec {
    fn default() -> Self {
        Self { l: 1.5, omega_c: 5.0, t_max: 5.0, n_terms: 256, nodes: 32, factors: vec![0.1, 0.3, 1.0, 3.0, 10.0] }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    L,
    OmegaC,
    T0,
    Delta,
    A,
}

impl SweepParameter {
    pub fn name(&self) -> &'static str {
        match self {
            SweepParameter::L => "l",
            SweepParameter::OmegaC => "omega_c",
            SweepParameter::T0 => "t0",
            SweepParameter::Delta => "delta",
            SweepParameter::A => "a",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub parameter: SweepParameter,
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Axis {
    pub fn values(&self) -> Vec<f64> {
        match self.count {
            0 => Vec::new(),
            1 => vec![self.min],
            n => (0..n).map(|i| self.min + (self.max - self.min) * i as f64 / (n - 1) as f64).collect(),
        }
    }
}

/// Success-probability sweep; unswept parameters come from `window` and `rsp`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSpec {
    pub axes: Vec<Axis>,
}

impl SweepSpec {
    pub fn points(&self) -> usize {
        self.axes.iter().map(|a| a.count).product()
    }
}
