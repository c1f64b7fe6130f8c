//! Radial quadrature on [0, ∞), the reference integrals I_p, J_p and the
//! middle-zone integral.

pub mod engine;
pub mod norms;

pub use engine::{Control, Estimate};
pub use norms::{norm_series, norm_value, NormKind, NormSeries, Sample, Zone};

use crate::error::{domain, Error, Result};
use crate::scaled::Scaled;
use crate::symbol_core::thresholds;
use engine::{integrate, plain, uniform_breaks};

/// Quadrature configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadSpec {
    /// spatial dimension
    pub n: u32,
    /// relative tolerance
    pub tol: f64,
    /// increasing radial break points; the last one is where the tail starts
    pub zone_splits: Vec<f64>,
    /// cost guard on the total number of panels of one integral
    pub max_panels: usize,
    /// panel width of oscillatory integrands as a fraction of the local half period
    pub osc_guard: f64,
}

impl QuadSpec {
    pub fn new(n: u32) -> Self {
        let th = thresholds();
        QuadSpec {
            n,
            tol: 1e-8,
            zone_splits: vec![th.eta, th.delta, th.r_unit],
            max_panels: 4_000_000,
            osc_guard: 1.0,
        }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(domain("n", "n >= 1", 0.0));
        }
        if !(self.tol >= 1e-12 && self.tol <= 1e-3) {
            return Err(domain("tol", "1e-12 <= tol <= 1e-3", self.tol));
        }
        if self.zone_splits.is_empty()
            || self.zone_splits.windows(2).any(|w| !(w[0] < w[1]))
            || !(self.zone_splits[0] > 0.0)
        {
            return Err(domain(
                "zone_splits",
                "positive and strictly increasing",
                f64::NAN,
            ));
        }
        if !(self.osc_guard > 0.0 && self.osc_guard <= 1.0) {
            return Err(domain("osc_guard", "0 < osc_guard <= 1", self.osc_guard));
        }
        if self.max_panels < 16 {
            return Err(domain(
                "max_panels",
                "max_panels >= 16",
                self.max_panels as f64,
            ));
        }
        Ok(())
    }

    pub fn tail_start(&self) -> f64 {
        *self.zone_splits.last().expect("validated")
    }

    pub(crate) fn control(&self) -> Control {
        Control {
            rel_tol: self.tol,
            abs_tol: Scaled::ZERO,
            max_panels: self.max_panels,
        }
    }
}

/// Γ(k/2) for k ≥ 1, exact recursion from Γ(1/2) = √π and Γ(1) = 1.
pub fn gamma_half(k: u32) -> f64 {
    assert!(k >= 1, "gamma_half needs k >= 1");
    let (mut g, mut x) = if k % 2 == 0 {
        (1.0, 1.0)
    } else {
        (std::f64::consts::PI.sqrt(), 0.5)
    };
    while 2.0 * x < k as f64 {
        g *= x;
        x += 1.0;
    }
    g
}

/// ω_n = 2π^{n/2}/Γ(n/2).
pub fn surface_area(n: u32) -> f64 {
    assert!(n >= 1, "surface_area needs n >= 1");
    2.0 * std::f64::consts::PI.powf(n as f64 / 2.0) / gamma_half(n)
}

/// Tail integration by doubling the truncation point.
pub(crate) struct Tail {
    pub start: f64,
    /// the stop test is only applied once the segment start reaches this point
    pub floor: f64,
    pub max_doublings: usize,
}

pub(crate) struct TailResult {
    pub est: Estimate,
    pub converged: bool,
}

/// Integrates f over [start, ∞) on segments [x, 2x]. `panels_for` gives the
/// initial panel count of a segment; `base` is the value already accumulated
/// before the tail, used in the relative stopping test.
pub(crate) fn integrate_tail<F, P>(
    f: &F,
    tail: &Tail,
    panels_for: P,
    c: &Control,
    base: Scaled,
) -> Result<TailResult>
where
    F: Fn(f64) -> Result<Scaled>,
    P: Fn(f64, f64) -> usize,
{
    let mut lo = tail.start;
    let mut acc = Estimate::ZERO;
    let mut used = 0usize;
    let mut last = Scaled::ZERO;
    for _ in 0..tail.max_doublings {
        let hi = 2.0 * lo;
        let k = panels_for(lo, hi);
        if used + k > c.max_panels {
            return Err(Error::CostGuard(format!(
                "tail segment [{lo}, {hi}] needs {} panels in total, budget {}",
                used + k,
                c.max_panels
            )));
        }
        let total = base.add(acc.value);
        let seg_c = Control {
            rel_tol: c.rel_tol,
            abs_tol: total.abs().mul_f64(c.rel_tol),
            max_panels: c.max_panels - used,
        };
        let e = integrate(f, &uniform_breaks(lo, hi, k), &seg_c)?;
        used += e.panels;
        acc = Estimate {
            value: acc.value.add(e.value),
            err: acc.err.add(e.err),
            panels: acc.panels + e.panels,
        };
        last = e.value.abs();
        let total = base.add(acc.value);
        let small = last.is_zero() || last.ln_abs() <= total.abs().mul_f64(c.rel_tol).ln_abs();
        if lo >= tail.floor && small {
            acc.err = acc.err.add(last);
            return Ok(TailResult {
                est: acc,
                converged: true,
            });
        }
        lo = hi;
    }
    acc.err = acc.err.add(last);
    Ok(TailResult {
        est: acc,
        converged: false,
    })
}

/// ∫_{lo}^{hi} f(r) dr, or ∫_{lo}^{∞} when `hi` is `None`.
///
/// The infinite case integrates up to the configured tail start and then
/// doubles the truncation radius until the increment drops below tol·total.
pub fn radial_integral<F: Fn(f64) -> f64>(
    f: &F,
    spec: &QuadSpec,
    lo: f64,
    hi: Option<f64>,
) -> Result<Estimate> {
    spec.validate()?;
    let g = plain(f);
    let c = spec.control();
    match hi {
        Some(hi) => {
            if !(hi >= lo) {
                return Err(domain("r_hi", "r_hi >= r_lo", hi));
            }
            integrate(&g, &uniform_breaks(lo, hi, 8), &c)
        }
        None => {
            let start = spec.tail_start().max(lo);
            let head = if start > lo {
                integrate(&g, &uniform_breaks(lo, start, 8), &c)?
            } else {
                Estimate::ZERO
            };
            let tail = Tail {
                start: if start > 0.0 { start } else { 1.0 },
                floor: start,
                max_doublings: 64,
            };
            let t = integrate_tail(&g, &tail, |_, _| 8, &c, head.value)?;
            if !t.converged {
                return Err(Error::TailDivergent(tail.max_doublings));
            }
            Ok(Estimate {
                value: head.value.add(t.est.value),
                err: head.err.add(t.est.err),
                panels: head.panels + t.est.panels,
            })
        }
    }
}

fn ref_control() -> Control {
    Control {
        rel_tol: 1e-13,
        abs_tol: Scaled::ZERO,
        max_panels: 200_000,
    }
}

/// I_p(t) = ∫₀¹ (1+r²)^{−t} r^p dr.
pub fn ref_integral_ip(p: f64, t: f64) -> Result<f64> {
    if !(p > -1.0) {
        return Err(domain("p", "p > -1", p));
    }
    if !(t >= 0.0) {
        return Err(domain("t", "t >= 0", t));
    }
    let f = plain(move |r: f64| (-t * (r * r).ln_1p()).exp() * r.powf(p));
    Ok(integrate(&f, &uniform_breaks(0.0, 1.0, 8), &ref_control())?
        .value
        .to_f64())
}

/// J_p(t) = ∫₁^∞ (1+r²)^{−t} r^p dr.
pub fn ref_integral_jp(p: f64, t: f64) -> Result<f64> {
    if !(t > 1.0 && t > (p + 1.0) / 2.0) {
        return Err(domain("t", "t > max(1, (p+1)/2)", t));
    }
    let f = plain(move |r: f64| (-t * (r * r).ln_1p() + p * r.ln()).exp());
    let tail = Tail {
        start: 1.0,
        floor: 1.0,
        max_doublings: 64,
    };
    let res = integrate_tail(&f, &tail, |_, _| 8, &ref_control(), Scaled::ZERO)?;
    if !res.converged {
        return Err(Error::TailDivergent(tail.max_doublings));
    }
    Ok(res.est.value.to_f64())
}

/// ∫_η^1 (1+r²)^{−t} r^p dr.
pub fn middle_zone_integral(p: f64, t: f64, eta: f64) -> Result<f64> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(domain("eta", "0 < eta < 1", eta));
    }
    let f = plain(move |r: f64| (-t * (r * r).ln_1p()).exp() * r.powf(p));
    Ok(integrate(&f, &uniform_breaks(eta, 1.0, 8), &ref_control())?
        .value
        .to_f64())
}
