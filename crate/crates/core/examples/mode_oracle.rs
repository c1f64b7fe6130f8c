//! One Fourier mode: closed form against the Dormand-Prince oracle, energies
//! and the factor-6 pointwise bound.
//!
//! cargo run --example mode_oracle

use logdamp::mode_dynamics::{diagnostics, mode_solve, pointwise_bound_check};
use logdamp::ode_oracle::{integrate_mode_report, IntegratorConfig};
use logdamp::symbol_core::{thresholds, FreqPoint};
use num_complex::Complex64;

fn main() {
    let th = thresholds();
    let (u0, u1) = (Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0));
    println!(
        "{:>10} {:>6} {:>24} {:>10} {:>7} {:>10} {:>10}",
        "r", "t", "u", "rel err", "steps", "dE0 res", "margin"
    );
    for r in [1e-4, th.eta, th.delta, 1.0, 3.0, 1e3] {
        let p = FreqPoint::new(r).unwrap();
        for t in [1.0, 10.0, 100.0] {
            let s = mode_solve(p, u0, u1, t).unwrap();
            let o = integrate_mode_report(p, u0, u1, t, IntegratorConfig::default()).unwrap();
            let diff = ((s.u - o.state.u).norm_sqr() + (s.v - o.state.v).norm_sqr()).sqrt();
            let rel = diff / (s.u.norm_sqr() + s.v.norm_sqr()).sqrt();
            let d = diagnostics(p, u0, u1, t).unwrap();
            let b = pointwise_bound_check(p, u0, u1, t).unwrap();
            println!(
                "{r:>10.4} {t:>6} {:>24.15e} {rel:>10.2e} {:>7} {:>10.2e} {:>10.2e}",
                s.u.re,
                o.steps,
                d.dissipation_residual,
                b.margin()
            );
        }
    }
}
