//! Asymptotic profiles φ₁ (diffusion-like), φ₂ (oscillatory) and φ = φ₁ + φ₂.

use crate::error::{domain, Result};
use crate::mode_dynamics::propagator;
use crate::scaled::Scaled;
use crate::spectral_data::RadialSpectrum;
use crate::symbol_core::FreqPoint;
use num_complex::Complex64;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ProfileKind {
    Phi1,
    Phi2,
    PhiSum,
}

impl fmt::Display for ProfileKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProfileKind::Phi1 => "phi1",
            ProfileKind::Phi2 => "phi2",
            ProfileKind::PhiSum => "phi",
        })
    }
}

impl FromStr for ProfileKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "phi1" => Ok(ProfileKind::Phi1),
            "phi2" => Ok(ProfileKind::Phi2),
            "phi" => Ok(ProfileKind::PhiSum),
            o => Err(format!(
                "unknown profile '{o}' (expected phi1, phi2 or phi)"
            )),
        }
    }
}

/// Below this value of Λt², sin(√Λ t)/√Λ is replaced by its series.
pub const SINC_CUTOFF: f64 = 1e-12;

fn check_t(t: f64) -> Result<()> {
    if !(t >= 0.0) {
        return Err(domain("t", "t >= 0", t));
    }
    Ok(())
}

/// (P₀+P₁)e^{−tΛ(1+Λ)}·e^{nΛ/4}, the weighted form used by quadrature.
pub fn phi1_weighted(d: &RadialSpectrum, lam: f64, t: f64) -> Scaled {
    let nq = d.n() as f64 / 4.0;
    Scaled::new(d.p0() + d.p1(), nq * lam - t * lam * (1.0 + lam))
}

/// φ₂ from weighted data values w0, w1 (so the result is weighted too).
pub fn phi2_from(w0: Scaled, w1: Scaled, lam: f64, t: f64) -> Scaled {
    if t == 0.0 {
        return w0;
    }
    if lam == 0.0 {
        return Scaled::ZERO;
    }
    let s = lam.sqrt();
    let x2 = lam * t * t;
    let (sn, cs) = (s * t).sin_cos();
    let sinc = if x2 < SINC_CUTOFF {
        t * (1.0 - x2 / 6.0)
    } else {
        sn / s
    };
    w1.mul_f64(sinc)
        .add(w0.mul_f64(cs))
        .mul(Scaled::exp(-t / (2.0 * lam)))
}

pub fn phi1(d: &RadialSpectrum, p: FreqPoint, t: f64) -> Result<Complex64> {
    check_t(t)?;
    let v = Scaled::new(d.p0() + d.p1(), -t * p.lam * (1.0 + p.lam));
    Ok(Complex64::new(v.to_f64(), 0.0))
}

pub fn phi2(d: &RadialSpectrum, p: FreqPoint, t: f64) -> Result<Complex64> {
    check_t(t)?;
    let w0 = Scaled::from_f64(d.eval0(p.r));
    let w1 = Scaled::from_f64(d.eval1(p.r));
    Ok(Complex64::new(phi2_from(w0, w1, p.lam, t).to_f64(), 0.0))
}

/// û(t) minus the selected profile, from weighted data values.
pub fn diff_from(
    w0: Scaled,
    w1: Scaled,
    phi1: Scaled,
    lam: f64,
    t: f64,
    kind: Option<ProfileKind>,
) -> Scaled {
    let u = propagator(lam, t).apply_scaled(w0, w1).0;
    match kind {
        None => u,
        Some(ProfileKind::Phi1) => u.sub(phi1),
        Some(ProfileKind::Phi2) => u.sub(phi2_from(w0, w1, lam, t)),
        Some(ProfileKind::PhiSum) => u.sub(phi1).sub(phi2_from(w0, w1, lam, t)),
    }
}

pub fn profile_diff(
    d: &RadialSpectrum,
    p: FreqPoint,
    t: f64,
    kind: ProfileKind,
) -> Result<Complex64> {
    check_t(t)?;
    let w0 = Scaled::from_f64(d.eval0(p.r));
    let w1 = Scaled::from_f64(d.eval1(p.r));
    let f1 = Scaled::new(d.p0() + d.p1(), -t * p.lam * (1.0 + p.lam));
    Ok(Complex64::new(
        diff_from(w0, w1, f1, p.lam, t, Some(kind)).to_f64(),
        0.0,
    ))
}
