// Randomized invariants of the symbol, mode, profile and fit layers.

use logdamp::decay_rates::{classify, fit_points, Regime};
use logdamp::mode_dynamics::{energy_density, mode_solve};
use logdamp::ode_oracle::{integrate_mode_samples, IntegratorConfig};
use logdamp::profiles::{phi1, phi2, profile_diff, ProfileKind};
use logdamp::spectral_data::{DataSpec, RadialSpectrum};
use logdamp::symbol_core::{
    char_roots, log_weight, mult_weight, root_bounds_hold, root_ratio_sq, sinhc_over_exp,
    thresholds, FreqPoint,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn gauss_pair(n: u32, a0: f64, a1: f64) -> RadialSpectrum {
    RadialSpectrum::from_specs(
        DataSpec::Gaussian {
            alpha: a0,
            amplitude: 1.0,
        },
        DataSpec::Gaussian {
            alpha: a1,
            amplitude: -0.5,
        },
        n,
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn log_weight_below_r_squared(r in 0.0f64..1e3) {
        let l = log_weight(r).unwrap();
        prop_assert!(l >= 0.0);
        prop_assert!(l <= r * r);
        prop_assert_eq!(l == 0.0, r == 0.0);
    }

    #[test]
    fn vieta_and_substitution(r in 0.0f64..50.0) {
        let p = FreqPoint::new(r).unwrap();
        let cr = char_roots(p);
        prop_assert!(cr.max_residual(p.lam) < 1e-12 * (1.0 + p.lam * p.lam), "r {} res {}", r, cr.max_residual(p.lam));
    }

    #[test]
    fn root_bounds_below_delta(f in 0.0f64..=1.0) {
        let th = thresholds();
        let p = FreqPoint::new(f * th.delta).unwrap();
        prop_assert!(root_bounds_hold(p, th));
    }

    #[test]
    fn sinhc_bounded_by_exp(x in 1e-8f64..700.0) {
        // sinh(x)/x ≤ eˣ  ⇔  sinh(x)/(x eˣ) ≤ 1
        let v = sinhc_over_exp(x);
        prop_assert!(v > 0.0 && v <= 1.0);
    }

    #[test]
    fn root_ratio_band_above_unit(extra in 0.0f64..1e4) {
        let lam = 1.0 + extra;
        let inv = 1.0 / root_ratio_sq(lam);
        prop_assert!(inv >= 1.0 && inv <= 16.0 / 15.0 + 1e-15);
    }

    #[test]
    fn discriminant_decreasing(a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assume!(lo < hi);
        let dl = char_roots(FreqPoint::from_lam(lo)).disc;
        let dh = char_roots(FreqPoint::from_lam(hi)).disc;
        prop_assert!(dh <= dl);
    }

    #[test]
    fn weight_is_min_of_three(r in 0.0f64..100.0) {
        let p = FreqPoint::new(r).unwrap();
        let w = mult_weight(p, thresholds()).w;
        let l = p.lam;
        let m = (0.5 * l * (1.0 + l)).min(0.5 / (1.0 + l)).min(0.5 * l.sqrt());
        prop_assert!(w >= 0.0);
        prop_assert!((w - m).abs() <= 1e-15 * (1.0 + m), "r {} w {} min {}", r, w, m);
    }

    #[test]
    fn classify_total_and_partitioned(n in 1u32..40, l2 in 0u32..60) {
        let l = 1.0 + l2 as f64 / 2.0;
        let rep = classify(n, l);
        let lstar = n as f64 / 2.0 - 1.0;
        match rep.regime {
            Regime::DiffusionLike => prop_assert!(l > lstar),
            Regime::WaveLike => prop_assert!(l < lstar),
            Regime::Both => prop_assert!(l == lstar && n >= 4),
            Regime::UncoveredByPaper => {}
        }
        prop_assert_eq!(rep.profile.is_some(), rep.regime != Regime::UncoveredByPaper);
    }

    #[test]
    fn fit_slope_scale_invariant(k in 1e-6f64..1e6, p in -4.0f64..-0.1) {
        let pts: Vec<(f64, f64)> = [10.0f64, 20.0, 40.0, 80.0, 160.0]
            .iter()
            .map(|&t| (t, (1.0 + 1.0 / t) * t.powf(p)))
            .collect();
        let scaled: Vec<(f64, f64)> = pts.iter().map(|&(t, v)| (t, k * v)).collect();
        let ln = |v: &[(f64, f64)]| v.iter().map(|&(t, x)| (t, x.ln())).collect::<Vec<_>>();
        let a = fit_points(&ln(&pts), (10.0, 160.0)).unwrap();
        let b = fit_points(&ln(&scaled), (10.0, 160.0)).unwrap();
        prop_assert!((a.slope - b.slope).abs() < 1e-10);
        prop_assert!((b.intercept - a.intercept - k.ln()).abs() < 1e-9);
    }

    #[test]
    fn profile_additivity(r in 0.0f64..5.0, t in 0.0f64..200.0, a0 in 0.2f64..3.0, a1 in 0.2f64..3.0) {
        let d = gauss_pair(3, a0, a1);
        let p = FreqPoint::new(r).unwrap();
        let f1 = phi1(&d, p, t).unwrap();
        let f2 = phi2(&d, p, t).unwrap();
        let dsum = profile_diff(&d, p, t, ProfileKind::PhiSum).unwrap();
        let d1 = profile_diff(&d, p, t, ProfileKind::Phi1).unwrap();
        let d2 = profile_diff(&d, p, t, ProfileKind::Phi2).unwrap();
        let scale = 1.0 + f1.norm() + f2.norm() + d1.norm();
        prop_assert!((dsum - (d1 - f2)).norm() <= 1e-14 * scale);
        prop_assert!((dsum - (d2 - f1)).norm() <= 1e-14 * scale);
    }

    #[test]
    fn phi1_envelope(r in 0.0f64..10.0, t in 0.0f64..1e3) {
        let d = gauss_pair(2, 1.0, 2.0);
        let p = FreqPoint::new(r).unwrap();
        let f = phi1(&d, p, t).unwrap().norm();
        let env = (d.p0() + d.p1()).abs() * (-t * p.lam).exp();
        prop_assert!(f <= env * (1.0 + 1e-14) + 1e-300);
    }

    #[test]
    fn mode_at_time_zero_is_identity(r in 0.0f64..100.0, u0 in -5.0f64..5.0, u1 in -5.0f64..5.0) {
        let p = FreqPoint::new(r).unwrap();
        let s = mode_solve(p, Complex64::new(u0, 0.3), Complex64::new(u1, -0.7), 0.0).unwrap();
        prop_assert_eq!(s.u, Complex64::new(u0, 0.3));
        prop_assert_eq!(s.v, Complex64::new(u1, -0.7));
    }

    #[test]
    fn energy_sandwich(r in 0.0f64..30.0, t in 0.0f64..100.0, u0 in -3.0f64..3.0, u1 in -3.0f64..3.0) {
        let p = FreqPoint::new(r).unwrap();
        let s = mode_solve(p, Complex64::new(u0, 0.0), Complex64::new(u1, 0.0), t).unwrap();
        let e = energy_density(p, &s, mult_weight(p, thresholds()));
        let slack = 1e-12 * e.e0 + 1e-300;
        prop_assert!(e.e0 >= 0.0);
        prop_assert!(0.5 * e.e0 <= e.e_mod + slack);
        prop_assert!(e.e_mod <= 3.0 * e.e0 + slack);
    }

    #[test]
    fn e0_non_increasing(r in 0.0f64..20.0, u0 in -3.0f64..3.0, u1 in -3.0f64..3.0) {
        let p = FreqPoint::new(r).unwrap();
        let w = mult_weight(p, thresholds());
        let ts: Vec<f64> = (0..40).map(|k| 0.5 * k as f64).collect();
        let mut prev = f64::INFINITY;
        for t in ts {
            let s = mode_solve(p, Complex64::new(u0, 0.0), Complex64::new(u1, 0.0), t).unwrap();
            let e = energy_density(p, &s, w).e0;
            prop_assert!(e <= prev * (1.0 + 1e-12) + 1e-300, "t {} e {} prev {}", t, e, prev);
            prev = e;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn integrator_energy_non_increasing(r in 0.0f64..10.0, u0 in -2.0f64..2.0, u1 in -2.0f64..2.0) {
        let p = FreqPoint::new(r).unwrap();
        let w = mult_weight(p, thresholds());
        let ts: Vec<f64> = (1..=60).map(|k| 0.25 * k as f64).collect();
        let out = integrate_mode_samples(p, Complex64::new(u0, 0.0), Complex64::new(u1, 0.0), &ts, IntegratorConfig::default()).unwrap();
        let mut prev = f64::INFINITY;
        for s in &out {
            let e = energy_density(p, s, w).e0;
            prop_assert!(e <= prev * (1.0 + 1e-8) + 1e-300, "t {} e {} prev {}", s.t, e, prev);
            prev = e;
        }
    }
}
