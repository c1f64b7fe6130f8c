//! Independent Dormand–Prince 5(4) integration of the mode ODE.

use crate::error::{domain, Error, Result};
use crate::mode_dynamics::ModeState;
use crate::symbol_core::FreqPoint;
use num_complex::Complex64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegratorConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_steps: usize,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            rel_tol: 1e-10,
            abs_tol: 1e-300,
            max_steps: 1_000_000,
        }
    }
}

impl IntegratorConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-6) {
            return Err(domain("rel_tol", "0 < rel_tol <= 1e-6", self.rel_tol));
        }
        if !(self.abs_tol > 0.0) {
            return Err(domain("abs_tol", "abs_tol > 0", self.abs_tol));
        }
        if self.max_steps < 10_000 {
            return Err(domain(
                "max_steps",
                "max_steps >= 1e4",
                self.max_steps as f64,
            ));
        }
        Ok(())
    }
}

/// Final state plus the accumulated local error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OdeReport {
    pub state: ModeState,
    /// sum over accepted steps of the max-norm local error estimate
    pub err_estimate: f64,
    pub steps: usize,
}

// the system is autonomous, so the stage times c_i are not needed
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
// fifth-order weights are the last row of A (FSAL); E = b5 - b4
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Step-size controller safety factor.
const SAFETY: f64 = 0.8;

type Y = [f64; 4];

fn rhs(lam: f64, y: &Y) -> Y {
    let k = 1.0 + lam;
    [
        y[2],
        y[3],
        -(y[2] + lam * k * y[0]) / k,
        -(y[3] + lam * k * y[1]) / k,
    ]
}

struct Stepper {
    lam: f64,
    cfg: IntegratorConfig,
    y: Y,
    t: f64,
    h: f64,
    k1: Y,
    /// running compensation of the state sum
    comp: Y,
    steps: usize,
    err_sum: f64,
}

impl Stepper {
    /// Advances exactly to `t_end`.
    fn run_to(&mut self, t_end: f64) -> Result<()> {
        while self.t < t_end {
            if self.steps >= self.cfg.max_steps {
                return Err(Error::StepBudget {
                    steps: self.steps,
                    t: self.t,
                });
            }
            let last = self.t + self.h >= t_end;
            let h = if last { t_end - self.t } else { self.h };
            let mut ks = [[0.0; 4]; 7];
            ks[0] = self.k1;
            let mut comp = self.comp;
            for s in 1..7 {
                let mut inc = [0.0; 4];
                for (j, kj) in ks.iter().enumerate().take(s) {
                    let a = A[s][j];
                    if a != 0.0 {
                        for i in 0..4 {
                            inc[i] += h * a * kj[i];
                        }
                    }
                }
                let mut yi = self.y;
                if s == 6 {
                    // compensated update of the accepted state
                    for i in 0..4 {
                        let d = inc[i] + self.comp[i];
                        yi[i] = self.y[i] + d;
                        comp[i] = d - (yi[i] - self.y[i]);
                    }
                } else {
                    for i in 0..4 {
                        yi[i] += inc[i];
                    }
                }
                if s == 6 {
                    // yi is the fifth-order solution
                    ks[6] = rhs(self.lam, &yi);
                    let mut err = 0.0f64;
                    let mut err_max = 0.0f64;
                    // error relative to the size of the whole state, so a
                    // component passing through zero does not stall the step
                    let size = (0..4).fold(0.0f64, |m, i| m.max(self.y[i].abs()).max(yi[i].abs()));
                    let sc = self.cfg.abs_tol + self.cfg.rel_tol * size;
                    for i in 0..4 {
                        let mut e = 0.0;
                        for (s2, k) in ks.iter().enumerate() {
                            e += E[s2] * k[i];
                        }
                        let e = h * e;
                        err = err.max((e / sc).abs());
                        err_max = err_max.max(e.abs());
                    }
                    self.steps += 1;
                    if err <= 1.0 {
                        self.t = if last { t_end } else { self.t + h };
                        self.y = yi;
                        self.comp = comp;
                        self.k1 = ks[6];
                        self.err_sum += err_max;
                        let fac = if err == 0.0 {
                            5.0
                        } else {
                            (SAFETY * err.powf(-0.2)).clamp(0.2, 5.0)
                        };
                        if !last {
                            self.h = h * fac;
                        }
                    } else {
                        self.h = h * (SAFETY * err.powf(-0.2)).max(0.2);
                    }
                } else {
                    ks[s] = rhs(self.lam, &yi);
                }
            }
        }
        Ok(())
    }

    fn state(&self) -> ModeState {
        ModeState {
            u: Complex64::new(self.y[0], self.y[1]),
            v: Complex64::new(self.y[2], self.y[3]),
            t: self.t,
        }
    }
}

fn stepper(
    p: FreqPoint,
    u0: Complex64,
    u1: Complex64,
    t_end: f64,
    cfg: IntegratorConfig,
) -> Stepper {
    let y = [u0.re, u0.im, u1.re, u1.im];
    let k1 = rhs(p.lam, &y);
    // the fastest rate is max(1, Λ)-sized; start well inside it
    let h = (0.01 / (1.0 + p.lam)).min(t_end.max(1e-3));
    Stepper {
        lam: p.lam,
        cfg,
        y,
        t: 0.0,
        h,
        k1,
        comp: [0.0; 4],
        steps: 0,
        err_sum: 0.0,
    }
}

/// Integrates (u, v)' = (v, −[v + Λ(1+Λ)u]/(1+Λ)) from 0 to `t_end`.
pub fn integrate_mode(
    p: FreqPoint,
    u0: Complex64,
    u1: Complex64,
    t_end: f64,
    cfg: IntegratorConfig,
) -> Result<ModeState> {
    integrate_mode_report(p, u0, u1, t_end, cfg).map(|r| r.state)
}

pub fn integrate_mode_report(
    p: FreqPoint,
    u0: Complex64,
    u1: Complex64,
    t_end: f64,
    cfg: IntegratorConfig,
) -> Result<OdeReport> {
    cfg.validate()?;
    if !(t_end >= 0.0) {
        return Err(domain("t_end", "t_end >= 0", t_end));
    }
    let mut st = stepper(p, u0, u1, t_end, cfg);
    st.run_to(t_end)?;
    Ok(OdeReport {
        state: st.state(),
        err_estimate: st.err_sum,
        steps: st.steps,
    })
}

/// States at each of the increasing sample times; steps land exactly on them.
pub fn integrate_mode_samples(
    p: FreqPoint,
    u0: Complex64,
    u1: Complex64,
    times: &[f64],
    cfg: IntegratorConfig,
) -> Result<Vec<ModeState>> {
    cfg.validate()?;
    let t_end = times.last().copied().unwrap_or(0.0);
    let mut st = stepper(p, u0, u1, t_end, cfg);
    let mut out = Vec::with_capacity(times.len());
    let mut prev = 0.0;
    for &t in times {
        if !(t >= prev) {
            return Err(domain("sample time", "non-decreasing, >= 0", t));
        }
        st.run_to(t)?;
        out.push(st.state());
        prev = t;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_frequency() {
        let p = FreqPoint::new(0.0).unwrap();
        let s = integrate_mode(
            p,
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            2.0,
            IntegratorConfig::default(),
        )
        .unwrap();
        assert!((s.u.re - (1.0 - (-2f64).exp())).abs() < 1e-10);
        assert!((s.u.re - 0.864665).abs() < 1e-6);
    }

    #[test]
    fn t_zero_returns_initial() {
        let p = FreqPoint::new(3.0).unwrap();
        let u0 = Complex64::new(0.2, 0.1);
        let u1 = Complex64::new(-1.0, 0.5);
        let s = integrate_mode(p, u0, u1, 0.0, IntegratorConfig::default()).unwrap();
        assert_eq!((s.u, s.v), (u0, u1));
    }

    #[test]
    fn budget_is_a_distinct_error() {
        let p = FreqPoint::new(3.0).unwrap();
        let cfg = IntegratorConfig {
            max_steps: 10_000,
            ..Default::default()
        };
        let e = integrate_mode(
            p,
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            1e7,
            cfg,
        );
        assert!(matches!(e, Err(Error::StepBudget { .. })));
        let bad = IntegratorConfig {
            rel_tol: 1e-3,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }
}
