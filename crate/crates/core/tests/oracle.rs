// The closed-form mode solution against the adaptive integrator.

use logdamp::mode_dynamics::mode_solve;
use logdamp::ode_oracle::{integrate_mode, integrate_mode_report, IntegratorConfig};
use logdamp::symbol_core::{thresholds, FreqPoint};
use num_complex::Complex64;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn pair_err(p: FreqPoint, u0: f64, u1: f64, t: f64) -> f64 {
    let e = mode_solve(p, c(u0), c(u1), t).unwrap();
    let o = integrate_mode(p, c(u0), c(u1), t, IntegratorConfig::default()).unwrap();
    let num = ((e.u - o.u).norm_sqr() + (e.v - o.v).norm_sqr()).sqrt();
    num / (o.u.norm_sqr() + o.v.norm_sqr()).sqrt()
}

#[test]
fn complex_regime_agrees() {
    let err = pair_err(FreqPoint::new(3.0).unwrap(), 1.0, 1.0, 20.0);
    assert!(err < 1e-8, "{err}");
}

#[test]
fn unit_frequency_agrees() {
    let err = pair_err(FreqPoint::new(1.0).unwrap(), 1.0, 0.0, 5.0);
    assert!(err < 1e-8, "{err}");
}

#[test]
fn near_double_root_agrees() {
    let d = thresholds().delta;
    for r in [d * (1.0 - 1e-8), d, d * (1.0 + 1e-8)] {
        let err = pair_err(FreqPoint::new(r).unwrap(), 1.0, -0.5, 30.0);
        assert!(err < 1e-8, "r {r}: {err}");
    }
}

#[test]
fn low_frequency_agrees() {
    for r in [0.0, 1e-4, 0.05, 0.3] {
        for (u0, u1) in [(1.0, 0.0), (0.0, 1.0), (1.0, -1.0)] {
            let err = pair_err(FreqPoint::new(r).unwrap(), u0, u1, 50.0);
            assert!(err < 1e-8, "r {r} ({u0},{u1}): {err}");
        }
    }
}

#[test]
fn tolerance_halving_within_estimate() {
    let p = FreqPoint::new(0.7).unwrap();
    let run = |tol: f64| {
        let cfg = IntegratorConfig {
            rel_tol: tol,
            ..IntegratorConfig::default()
        };
        integrate_mode_report(p, c(1.0), c(0.5), 25.0, cfg).unwrap()
    };
    let a = run(1e-8);
    let b = run(5e-9);
    let gap = (a.state.u - b.state.u)
        .norm()
        .max((a.state.v - b.state.v).norm());
    assert!(
        gap <= a.err_estimate + b.err_estimate,
        "gap {gap} est {}",
        a.err_estimate
    );
}

#[test]
fn config_validation() {
    let p = FreqPoint::new(1.0).unwrap();
    let bad = IntegratorConfig {
        rel_tol: 1e-3,
        ..IntegratorConfig::default()
    };
    assert!(integrate_mode(p, c(1.0), c(0.0), 1.0, bad).is_err());
    let bad = IntegratorConfig {
        max_steps: 100,
        ..IntegratorConfig::default()
    };
    assert!(integrate_mode(p, c(1.0), c(0.0), 1.0, bad).is_err());
}
