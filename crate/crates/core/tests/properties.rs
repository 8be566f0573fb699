use num_complex::Complex;
use proptest::prelude::*;

use superosc::qft::{fidelity, success_probability_estimate, FieldConfig, KGrid, OneParticleState};
use superosc::specfun::sph_bessel;
use superosc::spinarray::{compensation_spins, reflection_series_weights, ylm_shell_condition, TargetProfile};
use superosc::superosc::{
    envelope_relative_error, spectral_closed_scaled, spectral_integral_scaled, synthesize_window, DesiredProfile, PhaseBranch,
    SuperoscParams, SynthesisFamily, WindowFunction,
};
use superosc::transforms::SampledFunction;

fn branch() -> impl Strategy<Value = PhaseBranch> {
    prop_oneof![Just(PhaseBranch::Plus), Just(PhaseBranch::Minus)]
}

fn params() -> impl Strategy<Value = SuperoscParams<f64>> {
    (1u64..80, 0.0f64..6.0, 0.3f64..3.0, 0.01f64..3.0, branch())
        .prop_map(|(m, a, t0, amp, b)| SuperoscParams::from_index(m, a, t0, amp, b).unwrap())
}

fn state(grid: &KGrid<f64>, seed: &[(f64, f64)]) -> OneParticleState<f64> {
    let amps = grid.k().iter().enumerate().map(|(i, _)| Complex::new(seed[i % seed.len()].0, seed[i % seed.len()].1)).collect();
    OneParticleState::new(grid.clone(), amps).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn window_vanishes_outside_support(p in params(), s in prop_oneof![-50.0f64..-1.0001, 0.0001f64..50.0]) {
        let w = WindowFunction::closed_form(p);
        let t = s * p.t0();
        prop_assert_eq!(w.value(t).unwrap(), Complex::new(0.0, 0.0));
    }

    #[test]
    fn closed_form_matches_quadrature(p in params(), omega in -5.0f64..50.0) {
        let a = spectral_integral_scaled(&p, omega, 1e-13).unwrap();
        let b = spectral_closed_scaled(&p, omega).unwrap();
        prop_assert!(envelope_relative_error(&p, omega, &a, &b) < 1e-8);
    }

    #[test]
    fn fidelity_is_symmetric_and_scale_free(
        a in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..12),
        b in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..12),
        scale in 0.01f64..100.0,
        phase in 0.0f64..6.3,
    ) {
        prop_assume!(a.iter().any(|z| z.0 != 0.0 || z.1 != 0.0) && b.iter().any(|z| z.0 != 0.0 || z.1 != 0.0));
        let grid = KGrid::uniform(1, 4.0, 24).unwrap();
        let (sa, sb) = (state(&grid, &a), state(&grid, &b));
        let f = fidelity(&sa, &sb).unwrap();
        prop_assert!((f - fidelity(&sb, &sa).unwrap()).abs() < 1e-12);
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&f));
        let c = Complex::from_polar(scale, phase);
        let scaled = OneParticleState::new(grid.clone(), sa.amplitudes().iter().map(|z| z * c).collect()).unwrap();
        prop_assert!((fidelity(&scaled, &sb).unwrap() - f).abs() < 1e-12);
        prop_assert!((fidelity(&sa, &sa).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn log_success_decreases_with_distance_band_and_speed(
        p in params(), l in 0.1f64..5.0, wc in 0.1f64..20.0, grow in 1.01f64..3.0,
    ) {
        let base = success_probability_estimate(&p, l, wc).log_p;
        prop_assert!(success_probability_estimate(&p, l * grow, wc).log_p < base);
        prop_assert!(success_probability_estimate(&p, l, wc * grow).log_p < base);
        let faster = SuperoscParams::from_index(p.index(), p.a(), p.t0() / grow, p.amplitude(), p.branch()).unwrap();
        prop_assert!(success_probability_estimate(&faster, l, wc).log_p < base);
    }

    #[test]
    fn reflection_reproduces_gaussians_outside(
        centre in -4.0f64..4.0, width in 0.2f64..0.8, amp in 0.1f64..2.0, x in 1.0f64..8.0, left in any::<bool>(),
    ) {
        let g = TargetProfile::gaussian(centre, width, amp).unwrap();
        let s = reflection_series_weights(&g, 1.0, 8, 1e-10).unwrap();
        let x = if left { -x } else { x };
        prop_assert!((s.reconstruct(x) - g.eval(x)).norm() <= s.tail_bound() + 1e-13);
    }

    #[test]
    fn compensation_within_lipschitz_bound(
        modes in prop::collection::vec((-1.0f64..1.0, 0.5f64..6.0, 0.0f64..6.3), 1..4), n in 1usize..40,
    ) {
        let r = SampledFunction::tabulate(-1.0, 1.0, 4001, |x: f64| {
            Complex::new(modes.iter().map(|&(a, k, ph)| a * (k * x + ph).sin()).sum(), 0.0)
        })
        .unwrap();
        let lip: f64 = modes.iter().map(|&(a, k, _)| a.abs() * k).sum();
        let c = compensation_spins(&r, n).unwrap();
        prop_assert!(c.sup_error <= lip / n as f64 + 1e-9, "{} > {}", c.sup_error, lip / n as f64);
        prop_assert!((c.log_penalty + n as f64 * std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn shell_ratio_matches_bessel_quotient(l in 0usize..4, a0 in 0.2f64..1.0, gap in 0.1f64..3.0, frac in 0.1f64..0.95) {
        let cfg = FieldConfig::<f64>::new(1.0, 0.0, 3, 0.01).unwrap();
        let z = superosc::specfun::sph_bessel_first_zero::<f64>(l).unwrap();
        let k_c = frac * z / a0;
        let omega_c = cfg.omega_prime(k_c);
        let r = 1.0 + a0 + gap;
        let s = ylm_shell_condition(l, a0, r, 1.0, &cfg, omega_c, 17).unwrap();
        for (i, v) in s.values().iter().enumerate().skip(1) {
            let k = k_c * i as f64 / 16.0;
            let want = sph_bessel(l, k * r).unwrap() / sph_bessel(l, k * a0).unwrap();
            prop_assert!((v.re - want).abs() <= 1e-9 * want.abs().max(1.0), "{} vs {}", v.re, want);
        }
    }
}

#[test]
fn synthesis_is_linear_in_the_target() {
    let fam = SynthesisFamily::for_band(1.0, 3.0, 4.0, 0.02).unwrap();
    let bump = |c: f64, w: f64| move |t: f64| Complex::new((-(t - c).powi(2) / (2.0 * w * w)).exp(), 0.0);
    let (f, g) = (bump(1.5, 0.3), bump(-1.8, 0.2));
    let tab = |h: &dyn Fn(f64) -> Complex<f64>| DesiredProfile::Temporal(SampledFunction::tabulate(-4.0, 4.0, 801, h).unwrap());
    let wf = synthesize_window(&tab(&f), 3.0, &fam, 128).unwrap();
    let wg = synthesize_window(&tab(&g), 3.0, &fam, 128).unwrap();
    let wsum = synthesize_window(&tab(&|t| f(t) * 2.0 - g(t)), 3.0, &fam, 128).unwrap();
    for i in 0..=20 {
        let om = 4.0 * i as f64 / 20.0;
        let want = wf.spectrum(om).unwrap() * 2.0 - wg.spectrum(om).unwrap();
        assert!((wsum.spectrum(om).unwrap() - want).norm() < 1e-9 * (1.0 + want.norm()));
    }
}
