use num_complex::Complex;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::config::{Experiment, ExperimentConfig, SweepParameter, WindowSpec, MAX_SWEEP_POINTS};
use super::table::{Cell, ResultTable};
use super::CliError;
use crate::error::Error;
use crate::qft::{
    causal_leakage, critical_noise, evaluate_mirror_pair, inject_noise, run_mirror_pair, success_probability_estimate, KGrid,
    NoiseSpec,
};
use crate::specfun::sph_bessel_first_zero;
use crate::spinarray::{compensation_spins, reflection_series_weights, ylm_shell_condition, TargetProfile};
use crate::superosc::{spectral_table, superoscillation_report, SuperoscParams, Variant, WindowFunction};
use crate::transforms::{convolve, uniform_grid, SmoothingKernel};

pub struct Outcome {
    pub table: ResultTable,
    pub summary: Value,
}

fn config_err(e: Error) -> CliError {
    CliError::Config(e.to_string())
}

fn num(operation: &'static str) -> impl Fn(Error) -> CliError {
    move |source| CliError::Numerical { operation, source }
}

fn ensure(cond: bool, msg: &str) -> Result<(), CliError> {
    if cond {
        Ok(())
    } else {
        Err(CliError::Config(msg.to_owned()))
    }
}

pub fn build_window(spec: &WindowSpec) -> crate::Result<WindowFunction<f64>> {
    let p = spec.params()?;
    let w = match spec.variant {
        Some(kind) => WindowFunction::variant(Variant::from_params(&p, kind)),
        None => WindowFunction::closed_form(p),
    };
    match spec.kernel {
        Some(k) => convolve(&w, &SmoothingKernel::new(k.width, k.order)?),
        None => Ok(w),
    }
}

/// Checks every parameter the chosen experiment consumes.
pub fn validate(cfg: &ExperimentConfig) -> Result<(), CliError> {
    cfg.field.validate().map_err(config_err)?;
    match cfg.experiment {
        Experiment::Window | Experiment::Report => {
            build_window(&cfg.window).map_err(config_err)?;
            ensure(cfg.grid.points >= 2, "grid.points must be >= 2")
        }
        Experiment::Rsp1d => {
            let r = &cfg.rsp;
            ensure(cfg.field.dim == 1, "rsp1d needs field.dim = 1")?;
            ensure(r.l > 0.0 && r.omega_c > 0.0 && r.t0 > 0.0, "rsp.l, rsp.omega_c and rsp.t0 must be > 0")?;
            ensure(r.n_terms >= 1 && r.probe_count >= 1, "rsp.n_terms and rsp.probe_count must be >= 1")?;
            ensure(r.probe_end > r.probe_start, "rsp.probe_end must exceed rsp.probe_start")?;
            r.settings().synthesis.kernel().map_err(config_err)?;
            Ok(())
        }
        Experiment::Shell3d => {
            let s = &cfg.shell;
            ensure(s.points >= 2, "shell.points must be >= 2")?;
            ylm_shell_condition(s.l, s.a0, s.r, s.t0, &cfg.field, s.omega_c, 2).map(|_| ()).map_err(config_err)
        }
        Experiment::Appendix => {
            let a = &cfg.appendix;
            ensure(a.a > 0.0 && a.width > 0.0, "appendix.a and appendix.width must be > 0")?;
            ensure(a.n_max >= 1, "appendix.n_max must be >= 1")?;
            ensure(!a.spins.is_empty() && a.spins.iter().all(|&n| n >= 1), "appendix.spins must list counts >= 1")?;
            ensure(a.points >= 2 && a.residual_points >= 2, "appendix point counts must be >= 2")?;
            ensure(a.span > a.a, "appendix.span must exceed appendix.a")
        }
        Experiment::Sweep => {
            let n = cfg.sweep.points();
            ensure(n <= MAX_SWEEP_POINTS, "sweep exceeds 1e6 grid points")?;
            ensure(cfg.sweep.axes.iter().all(|a| a.count >= 1 && a.min <= a.max), "each sweep axis needs count >= 1 and min <= max")?;
            cfg.window.params().map_err(config_err)?;
            Ok(())
        }
        Experiment::Noise => {
            let n = &cfg.noise;
            ensure(cfg.field.dim == 1, "noise needs field.dim = 1")?;
            ensure(n.l > 0.0 && n.omega_c > 0.0 && n.t_max > 0.0, "noise.l, noise.omega_c and noise.t_max must be > 0")?;
            ensure(n.nodes >= 2 && n.n_terms >= 1, "noise.nodes must be >= 2 and noise.n_terms >= 1")?;
            ensure(!n.factors.is_empty() && n.factors.iter().all(|&f| f >= 0.0), "noise.factors must be nonempty and >= 0")
        }
    }
}

pub fn run(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    match cfg.experiment {
        Experiment::Window => window(cfg),
        Experiment::Report => report(cfg),
        Experiment::Rsp1d => rsp1d(cfg),
        Experiment::Shell3d => shell3d(cfg),
        Experiment::Appendix => appendix(cfg),
        Experiment::Sweep => sweep(cfg),
        Experiment::Noise => noise(cfg),
    }
}

fn window(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let w = build_window(&cfg.window).map_err(config_err)?;
    let (lo, hi) = w.support();
    let n = cfg.grid.points;
    let rows = (0..n)
        .into_par_iter()
        .map(|i| {
            let t = lo + (hi - lo) * (i as f64 + 0.5) / n as f64;
            let v = w.value_scaled(t)?;
            Ok(vec![t.into(), v.ln_abs().into(), v.mantissa.arg().into()])
        })
        .collect::<crate::Result<Vec<_>>>()
        .map_err(num("window time domain"))?;
    let mut table = ResultTable::new(&["t", "log_abs", "phase"]);
    rows.into_iter().for_each(|r| table.push(r));
    Ok(Outcome { table, summary: json!({ "support": [lo, hi], "omega_c": w.omega_c() }) })
}

fn report(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let w = build_window(&cfg.window).map_err(config_err)?;
    let rows = spectral_table(&w, cfg.grid.points).map_err(num("spectral_table"))?;
    let rep = superoscillation_report(&w).map_err(num("superoscillation_report"))?;
    let mut table = ResultTable::new(&["omega", "log_abs", "local_frequency"]);
    for r in rows {
        table.push(vec![r.omega.into(), r.log_abs.into(), r.local_frequency.into()]);
    }
    Ok(Outcome { table, summary: serde_json::to_value(rep).unwrap_or(Value::Null) })
}

fn rsp1d(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let settings = cfg.rsp.settings();
    let run = run_mirror_pair(&settings, &cfg.field).map_err(num("run_mirror_pair"))?;
    let mut table = ResultTable::new(&["l_probe", "abs_amplitude", "abs_reference", "fidelity"]);
    for ((&x, a), r) in run.amplitude.probes.iter().zip(&run.amplitude.values).zip(&run.reference) {
        table.push(vec![x.into(), a.norm().into(), r.norm().into(), run.fidelity.into()]);
    }
    let summary = json!({
        "correlation": run.correlation,
        "fidelity": run.fidelity,
        "synthesis_deviation": run.deviation,
        "tail_fraction": run.amplitude.tail_fraction,
        "truncation_warning": run.amplitude.truncation_warning,
    });
    Ok(Outcome { table, summary })
}

fn shell3d(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let s = &cfg.shell;
    let target = ylm_shell_condition(s.l, s.a0, s.r, s.t0, &cfg.field, s.omega_c, s.points).map_err(num("ylm_shell_condition"))?;
    let mut table = ResultTable::new(&["omega", "k", "value"]);
    for (&om, v) in target.grid().iter().zip(target.values()) {
        table.push(vec![om.into(), cfg.field.momentum_at(om).into(), v.re.into()]);
    }
    let z: f64 = sph_bessel_first_zero(s.l).map_err(num("sph_bessel_first_zero"))?;
    let summary = json!({ "first_zero": z, "k_c": cfg.field.momentum_at(s.omega_c), "a0_k_c": s.a0 * cfg.field.momentum_at(s.omega_c) });
    Ok(Outcome { table, summary })
}

fn appendix(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let spec = &cfg.appendix;
    let target = TargetProfile::gaussian(spec.center, spec.width, 1.0).map_err(config_err)?;
    let series = reflection_series_weights(&target, spec.a, spec.n_max, spec.tolerance).map_err(num("reflection_series_weights"))?;
    let residual = series.residual(spec.residual_points).map_err(num("residual"))?;
    let comps = spec
        .spins
        .iter()
        .map(|&n| compensation_spins(&residual, n))
        .collect::<crate::Result<Vec<_>>>()
        .map_err(num("compensation_spins"))?;
    let finest = comps.last().expect("spins validated nonempty");

    let xs = uniform_grid(-spec.span, spec.span, spec.points).map_err(config_err)?;
    let mut table = ResultTable::new(&["x", "target", "reconstruction", "error", "corrected_error"]);
    let mut sup_outside = 0.0f64;
    for &x in &xs {
        let f = target.eval(x);
        let rec = series.reconstruct(x);
        let err = rec - f;
        let corrected: Complex<f64> = if x.abs() < spec.a { err + finest.spins.field_1d(x) } else { err };
        if x.abs() > spec.a {
            sup_outside = sup_outside.max(err.norm());
        }
        table.push(vec![x.into(), f.re.into(), rec.re.into(), err.norm().into(), corrected.norm().into()]);
    }
    let residual_sup = residual.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
    let compensation: Vec<Value> = spec
        .spins
        .iter()
        .zip(&comps)
        .map(|(&n, c)| json!({ "spins": n, "sup_error": c.sup_error, "log_penalty": c.log_penalty }))
        .collect();
    let summary = json!({
        "tail_bound": series.tail_bound(),
        "sup_outside": sup_outside,
        "residual_sup": residual_sup,
        "compensation": compensation,
    });
    Ok(Outcome { table, summary })
}

fn sweep(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let axes = &cfg.sweep.axes;
    let values: Vec<Vec<f64>> = axes.iter().map(|a| a.values()).collect();
    let total = cfg.sweep.points();
    let base = cfg.window.params().map_err(config_err)?;

    let mut columns: Vec<String> = axes.iter().map(|a| format!("i_{}", a.parameter.name())).collect();
    columns.extend(
        ["l", "omega_c", "t0", "delta", "a", "log_delta", "log_delta_scaling", "log_p", "causally_covered", "status"]
            .iter()
            .map(|s| s.to_string()),
    );

    let rows: Vec<Vec<Cell>> = (0..total)
        .into_par_iter()
        .map(|flat| {
            let mut idx = vec![0usize; axes.len()];
            let mut rem = flat;
            for j in (0..axes.len()).rev() {
                idx[j] = rem % values[j].len();
                rem /= values[j].len();
            }
            let (mut l, mut omega_c, mut t0, mut delta, mut a) = (cfg.rsp.l, cfg.rsp.omega_c, base.t0(), base.delta(), base.a());
            for (j, axis) in axes.iter().enumerate() {
                let v = values[j][idx[j]];
                match axis.parameter {
                    SweepParameter::L => l = v,
                    SweepParameter::OmegaC => omega_c = v,
                    SweepParameter::T0 => t0 = v,
                    SweepParameter::Delta => delta = v,
                    SweepParameter::A => a = v,
                }
            }
            let mut row: Vec<Cell> = idx.iter().map(|&i| Cell::from(i)).collect();
            row.extend([l, omega_c, t0, delta, a].map(Cell::from));
            match SuperoscParams::new(delta, a, t0, base.amplitude(), base.branch()) {
                Ok(p) => {
                    let e = success_probability_estimate(&p, l, omega_c);
                    row.extend([e.log_delta.into(), e.log_delta_scaling.into(), e.log_p.into(), e.causally_covered.into(), "ok".into()]);
                }
                Err(err) => {
                    row.extend([f64::NAN.into(), f64::NAN.into(), f64::NAN.into(), Cell::Int(0), Cell::Text(format!("error: {err}"))]);
                }
            }
            row
        })
        .collect();

    let mut table = ResultTable::with_columns(columns);
    rows.into_iter().for_each(|r| table.push(r));
    let failed = table.column("status").map_or(0, |c| c.iter().filter(|s| !matches!(s, Cell::Text(t) if t == "ok")).count());
    Ok(Outcome { table, summary: json!({ "points": total, "failed": failed }) })
}

fn noise(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let spec = &cfg.noise;
    let mut settings = crate::qft::MirrorPairSettings::desk(spec.l, spec.omega_c);
    settings.synthesis.t_max = spec.t_max;
    settings.synthesis.n_terms = spec.n_terms;
    let base = run_mirror_pair(&settings, &cfg.field).map_err(num("run_mirror_pair"))?;
    let seed = cfg.seed.unwrap_or(7);
    let unit = NoiseSpec::generated(base.window.t0(), spec.nodes, 1.0, seed).map_err(config_err)?;
    let nu_c = critical_noise(&base.window, &unit.profile).map_err(num("critical_noise"))?;
    let grid = KGrid::for_band(&cfg.field, spec.omega_c).map_err(num("KGrid::for_band"))?;

    let rows: Vec<Vec<Cell>> = spec
        .factors
        .par_iter()
        .enumerate()
        .map(|(i, &f)| {
            let amplitude = f * nu_c;
            let point = || -> crate::Result<(f64, f64, f64)> {
                let noisy = inject_noise(&base.window, &NoiseSpec { amplitude, ..unit.clone() })?;
                let leak = causal_leakage(&noisy, spec.l, &cfg.field, &grid)?;
                let run = evaluate_mirror_pair(noisy, base.target.clone(), &settings, &cfg.field)?;
                Ok((run.fidelity, run.correlation, leak))
            };
            let mut row: Vec<Cell> = vec![i.into(), f.into(), amplitude.into()];
            match point() {
                Ok((fid, corr, leak)) => row.extend([fid.into(), corr.into(), leak.into(), "ok".into()]),
                Err(e) => row.extend([f64::NAN.into(), f64::NAN.into(), f64::NAN.into(), Cell::Text(format!("error: {e}"))]),
            }
            row
        })
        .collect();

    let mut table = ResultTable::new(&["index", "factor", "amplitude", "fidelity", "correlation", "leakage", "status"]);
    rows.into_iter().for_each(|r| table.push(r));
    let summary = json!({ "nu_c": nu_c, "seed": seed, "base_fidelity": base.fidelity, "base_correlation": base.correlation });
    Ok(Outcome { table, summary })
}
