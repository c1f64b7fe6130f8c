//! Frequency symbols, regime thresholds and characteristic roots.
//!
//! Everything here is a scalar function of the radial frequency `r`
//! through the log weight `Λ = log(1 + r²)`.

use crate::error::{domain, Error, Result};
use num_complex::Complex64;
use std::sync::OnceLock;

/// Equality tolerance on the discriminant for the degenerate regime.
pub const DEGENERATE_TOL: f64 = 1e-14;

/// Radial frequency together with its log weight.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FreqPoint {
    pub r: f64,
    pub lam: f64,
}

impl FreqPoint {
    pub fn new(r: f64) -> Result<Self> {
        Ok(FreqPoint {
            r,
            lam: log_weight(r)?,
        })
    }

    /// Point with a prescribed Λ. `r` may overflow to infinity for Λ > ~1420,
    /// which is harmless since every symbol depends on Λ only.
    pub fn from_lam(lam: f64) -> Self {
        FreqPoint {
            r: lam.exp_m1().sqrt(),
            lam,
        }
    }
}

/// Λ(r) = log(1 + r²), via log1p.
pub fn log_weight(r: f64) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(domain("r", "r >= 0", r));
    }
    Ok((r * r).ln_1p())
}

pub fn r_unit() -> f64 {
    (std::f64::consts::E - 1.0).sqrt()
}

/// The radial frequencies where the regime structure changes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Thresholds {
    /// (1+Λ)√Λ = 1
    pub delta0: f64,
    /// 4Λ(1+Λ)² = 1
    pub delta: f64,
    /// 4Λ(1+Λ)² = 3/4
    pub eta: f64,
    /// Λ = 1
    pub r_unit: f64,
    /// residuals of the defining equations, in the order delta0, delta, eta, r_unit
    pub residuals: [f64; 4],
}

pub fn delta0_residual(r: f64) -> f64 {
    let l = (r * r).ln_1p();
    (1.0 + l) * l.sqrt() - 1.0
}

pub fn delta_residual(r: f64) -> f64 {
    let l = (r * r).ln_1p();
    4.0 * l * (1.0 + l) * (1.0 + l) - 1.0
}

pub fn eta_residual(r: f64) -> f64 {
    let l = (r * r).ln_1p();
    4.0 * l * (1.0 + l) * (1.0 + l) - 0.75
}

fn bisect(name: &'static str, f: impl Fn(f64) -> f64, hi: f64) -> Result<f64> {
    // monotonicity on the bracket
    let mut prev = f(0.0);
    for k in 1..=256 {
        let v = f(hi * k as f64 / 256.0);
        if v < prev {
            return Err(Error::Bracket(name));
        }
        prev = v;
    }
    let (mut lo, mut hi) = (0.0, hi);
    if !(f(lo) < 0.0 && f(hi) > 0.0) {
        return Err(Error::Bracket(name));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let root = if f(lo).abs() <= f(hi).abs() { lo } else { hi };
    if f(root).abs() < 1e-12 {
        Ok(root)
    } else {
        Err(Error::Bracket(name))
    }
}

pub fn compute_thresholds() -> Result<Thresholds> {
    let ru = r_unit();
    let delta0 = bisect("delta0", delta0_residual, ru)?;
    let delta = bisect("delta", delta_residual, ru)?;
    let eta = bisect("eta", eta_residual, ru)?;
    Ok(Thresholds {
        delta0,
        delta,
        eta,
        r_unit: ru,
        residuals: [
            delta0_residual(delta0),
            delta_residual(delta),
            eta_residual(eta),
            (ru * ru).ln_1p() - 1.0,
        ],
    })
}

/// Cached thresholds.
pub fn thresholds() -> &'static Thresholds {
    static TH: OnceLock<Thresholds> = OnceLock::new();
    TH.get_or_init(|| compute_thresholds().expect("threshold bisection is infallible"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    RealDistinct,
    Degenerate,
    Complex,
}

/// Roots of (1+Λ)λ² + λ + Λ(1+Λ) = 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CharRoots {
    pub regime: Regime,
    /// 1/(2(1+Λ))
    pub a: f64,
    /// 1 − 4Λ(1+Λ)²
    pub disc: f64,
    /// √D/(2(1+Λ)) when D ≥ 0, else 0
    pub c: f64,
    /// √(−D)/(2(1+Λ)) when D < 0, else 0
    pub b: f64,
    pub lambda_plus: Complex64,
    pub lambda_minus: Complex64,
}

pub fn char_roots(p: FreqPoint) -> CharRoots {
    let l = p.lam;
    let k = 1.0 + l;
    let a = 0.5 / k;
    let disc = 1.0 - 4.0 * l * k * k;
    if disc.abs() < DEGENERATE_TOL {
        let lam = Complex64::new(-a, 0.0);
        CharRoots {
            regime: Regime::Degenerate,
            a,
            disc,
            c: 0.0,
            b: 0.0,
            lambda_plus: lam,
            lambda_minus: lam,
        }
    } else if disc > 0.0 {
        let c = disc.sqrt() * a;
        let lm = -(a + c);
        // λ₊ = Λ/λ₋ avoids the cancellation in −a + c at small r
        let lp = -l / (a + c);
        CharRoots {
            regime: Regime::RealDistinct,
            a,
            disc,
            c,
            b: 0.0,
            lambda_plus: Complex64::new(lp, 0.0),
            lambda_minus: Complex64::new(lm, 0.0),
        }
    } else {
        let b = (-disc).sqrt() * a;
        CharRoots {
            regime: Regime::Complex,
            a,
            disc,
            c: 0.0,
            b,
            lambda_plus: Complex64::new(-a, b),
            lambda_minus: Complex64::new(-a, -b),
        }
    }
}

impl CharRoots {
    /// Largest of the Vieta and substitution residuals.
    pub fn max_residual(&self, lam: f64) -> f64 {
        let k = 1.0 + lam;
        let sum = (self.lambda_plus + self.lambda_minus + 1.0 / k).norm();
        let prod = (self.lambda_plus * self.lambda_minus - lam).norm();
        let sub = |x: Complex64| (k * x * x + x + lam * k).norm();
        sum.max(prod)
            .max(sub(self.lambda_plus))
            .max(sub(self.lambda_minus))
    }
}

/// The multiplier weight ρ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MultWeight {
    pub w: f64,
}

pub fn mult_weight(p: FreqPoint, th: &Thresholds) -> MultWeight {
    let l = p.lam;
    let w = if p.r <= th.delta0 {
        0.5 * l * (1.0 + l)
    } else {
        0.5 / (1.0 + l)
    };
    MultWeight { w }
}

/// K_δ = 1 + log(1 + δ²).
pub fn k_delta(th: &Thresholds) -> f64 {
    1.0 + (th.delta * th.delta).ln_1p()
}

/// Explicit bounds on the roots below δ (and on their gap below η).
pub fn root_bounds_hold(p: FreqPoint, th: &Thresholds) -> bool {
    let cr = char_roots(p);
    let kd = k_delta(th);
    let l = p.lam;
    let le = |x: f64, y: f64| x <= y + 1e-14 * (1.0 + x.abs().max(y.abs()));
    let lp = cr.lambda_plus.re;
    let lm = cr.lambda_minus.re;
    let mut ok = true;
    if p.r <= th.delta {
        ok &= le(-2.0 * kd * l, lp) && le(lp, -l);
        ok &= le(-1.0, lm) && le(lm, -0.5 / kd);
        ok &= le(-1.0, lp + lm) && le(lp + lm, -1.0 / kd);
    }
    if p.r <= th.eta {
        ok &= le(0.5 / kd, lp - lm) && le(lp - lm, 1.0);
    }
    ok
}

/// sinh(x)/(x eˣ) = (1 − e^{−2x})/(2x), finite for every x > 0.
pub fn sinhc_over_exp(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        -(-2.0 * x).exp_m1() / (2.0 * x)
    }
}

/// R_root² = 1 − 1/(4Λ(1+Λ)²).
pub fn root_ratio_sq(lam: f64) -> f64 {
    1.0 - 1.0 / (4.0 * lam * (1.0 + lam) * (1.0 + lam))
}

/// Admissible constant and predicate for tᵛ e^{−c(1+Λ)^a t} ≤ C(1+Λ)^{−aν}.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PowerDecayBound {
    pub nu: f64,
    pub c: f64,
    pub a_exp: f64,
    pub constant: f64,
}

pub fn power_decay_bound(nu: f64, c: f64, a_exp: f64) -> Result<PowerDecayBound> {
    if !(nu > 0.0) {
        return Err(domain("nu", "nu > 0", nu));
    }
    if !(c > 0.0) {
        return Err(domain("c", "c > 0", c));
    }
    let constant = c.powf(-nu) * (nu / std::f64::consts::E).powf(nu);
    Ok(PowerDecayBound {
        nu,
        c,
        a_exp,
        constant,
    })
}

impl PowerDecayBound {
    /// (left side, right side) at (t, r).
    pub fn sides(&self, t: f64, r: f64) -> (f64, f64) {
        let k = 1.0 + (r * r).ln_1p();
        let ka = k.powf(self.a_exp);
        let lhs = if t == 0.0 {
            0.0
        } else {
            t.powf(self.nu) * (-self.c * ka * t).exp()
        };
        (lhs, self.constant * ka.powf(-self.nu))
    }

    pub fn holds(&self, t: f64, r: f64) -> bool {
        let (l, r) = self.sides(t, r);
        l <= r * (1.0 + 1e-12)
    }

    pub fn holds_on(&self, ts: &[f64], rs: &[f64]) -> bool {
        ts.iter().all(|&t| rs.iter().all(|&r| self.holds(t, r)))
    }
}
