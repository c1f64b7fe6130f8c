//! Fourier-side L² norms of mode solutions and profiles.
//!
//! Integration runs in σ = √Λ. Then r^{n−1}dr = e^{nΛ/2}·j(σ)dσ with
//! j(σ) = σ(1 − e^{−σ²})^{(n−2)/2}, regular at σ = 0 for every n, and the
//! oscillation phase √Λ·t is linear in σ, so the panel-width guard is a
//! plain uniform spacing π/t. The factor e^{nΛ/2} is absorbed into the data
//! (see `SpectrumComponent::eval_weighted`).

use super::engine::{integrate, uniform_breaks};
use super::{integrate_tail, surface_area, QuadSpec, Tail};
use crate::error::{domain, Error, Result};
use crate::profiles::{diff_from, phi1_weighted, phi2_from, ProfileKind};
use crate::scaled::Scaled;
use crate::spectral_data::{RadialSpectrum, SpectrumComponent, YNorm};
use crate::symbol_core::thresholds;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

/// Which squared norm is integrated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NormKind {
    /// ‖u‖²
    U,
    /// ‖u − φ₁‖²
    UMinusPhi1,
    /// ‖u − φ₂‖²
    UMinusPhi2,
    /// ‖u − φ‖²
    UMinusPhi,
    /// ‖φ₁‖²
    Phi1,
    /// ‖φ₂‖²
    Phi2,
}

impl NormKind {
    pub const ALL: [NormKind; 6] = [
        NormKind::U,
        NormKind::UMinusPhi1,
        NormKind::UMinusPhi2,
        NormKind::UMinusPhi,
        NormKind::Phi1,
        NormKind::Phi2,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            NormKind::U => "u",
            NormKind::UMinusPhi1 => "u-phi1",
            NormKind::UMinusPhi2 => "u-phi2",
            NormKind::UMinusPhi => "u-phi",
            NormKind::Phi1 => "phi1",
            NormKind::Phi2 => "phi2",
        }
    }

    /// Contains sin/cos of a phase growing linearly in t.
    pub fn oscillatory(&self) -> bool {
        !matches!(self, NormKind::Phi1)
    }

    pub fn from_profile(p: ProfileKind) -> Self {
        match p {
            ProfileKind::Phi1 => NormKind::UMinusPhi1,
            ProfileKind::Phi2 => NormKind::UMinusPhi2,
            ProfileKind::PhiSum => NormKind::UMinusPhi,
        }
    }
}

impl fmt::Display for NormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for NormKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        NormKind::ALL
            .into_iter()
            .find(|k| k.label() == s)
            .ok_or_else(|| format!("unknown norm kind '{s}'"))
    }
}

/// Frequency zones: {r ≤ η}, {η ≤ r ≤ δ}, {δ ≤ r ≤ √(e−1)}, {r ≥ √(e−1)}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Zone {
    All,
    Low,
    Mid,
    HighMid,
    High,
}

impl Zone {
    pub const PARTS: [Zone; 4] = [Zone::Low, Zone::Mid, Zone::HighMid, Zone::High];

    pub fn label(&self) -> &'static str {
        match self {
            Zone::All => "all",
            Zone::Low => "low",
            Zone::Mid => "mid",
            Zone::HighMid => "highmid",
            Zone::High => "high",
        }
    }
}

impl fmt::Display for Zone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Zone {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        [Zone::All, Zone::Low, Zone::Mid, Zone::HighMid, Zone::High]
            .into_iter()
            .find(|z| z.label() == s)
            .ok_or_else(|| format!("unknown zone '{s}' (expected all, low, mid, highmid or high)"))
    }
}

/// One squared-norm value at time t.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub value: Scaled,
    pub err: Scaled,
}

/// Squared norms over a time grid.
#[derive(Clone, Debug, PartialEq)]
pub struct NormSeries {
    pub n: u32,
    pub kind: NormKind,
    pub zone: Zone,
    pub samples: Vec<Sample>,
}

impl NormSeries {
    pub fn times(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.t).collect()
    }

    /// Natural logs of the values (−inf for exact zeros).
    pub fn ln_values(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.value.ln_abs()).collect()
    }
}

/// j(σ) = σ(1 − e^{−σ²})^{(n−2)/2}.
pub fn radial_jacobian(n: u32, sigma: f64) -> f64 {
    let q = -(-sigma * sigma).exp_m1();
    match n {
        1 => {
            if sigma == 0.0 {
                1.0
            } else {
                sigma / q.sqrt()
            }
        }
        2 => sigma,
        _ if n % 2 == 0 => sigma * q.powi((n as i32 - 2) / 2),
        _ => sigma * q.powf((n as f64 - 2.0) / 2.0),
    }
}

fn sigma_of(r: f64) -> f64 {
    (r * r).ln_1p().sqrt()
}

fn check(sigma: f64, v: Scaled) -> Result<Scaled> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(sigma))
    }
}

/// Pointwise integrand |q(t, σ)|²·j(σ) of the squared norm, without ω_n.
pub fn integrand(d: &RadialSpectrum, kind: NormKind, t: f64, sigma: f64) -> Result<Scaled> {
    let lam = sigma * sigma;
    let w0 = d.u0.eval_weighted(lam);
    let w1 = d.u1.eval_weighted(lam);
    let q = match kind {
        NormKind::Phi1 => phi1_weighted(d, lam, t),
        NormKind::Phi2 => phi2_from(w0, w1, lam, t),
        other => {
            let p = match other {
                NormKind::UMinusPhi1 => Some(ProfileKind::Phi1),
                NormKind::UMinusPhi2 => Some(ProfileKind::Phi2),
                NormKind::UMinusPhi => Some(ProfileKind::PhiSum),
                _ => None,
            };
            let f1 = if p.is_some() {
                phi1_weighted(d, lam, t)
            } else {
                Scaled::ZERO
            };
            diff_from(w0, w1, f1, lam, t, p)
        }
    };
    check(sigma, q.sqr().mul_f64(radial_jacobian(d.n(), sigma)))
}

fn panel_count(osc: bool, lo: f64, hi: f64, t: f64, spec: &QuadSpec) -> usize {
    if osc && t > 0.0 {
        let w = spec.osc_guard * std::f64::consts::PI / t;
        (((hi - lo) / w).ceil() as usize).max(4)
    } else {
        8
    }
}

fn zone_sigma(zone: Zone) -> (f64, Option<f64>) {
    let th = thresholds();
    let (e, d) = (sigma_of(th.eta), sigma_of(th.delta));
    match zone {
        Zone::All => (0.0, None),
        Zone::Low => (0.0, Some(e)),
        Zone::Mid => (e, Some(d)),
        Zone::HighMid => (d, Some(1.0)),
        Zone::High => (1.0, None),
    }
}

/// Squared norm at one time; value and error include the ω_n factor.
pub fn norm_value(
    d: &RadialSpectrum,
    kind: NormKind,
    zone: Zone,
    t: f64,
    spec: &QuadSpec,
) -> Result<Sample> {
    spec.validate()?;
    if d.n() != spec.n {
        return Err(domain(
            "n",
            "data and quadrature in the same dimension",
            d.n() as f64,
        ));
    }
    if !(t >= 0.0) {
        return Err(domain("t", "t >= 0", t));
    }
    let f = |s: f64| integrand(d, kind, t, s);
    let osc = kind.oscillatory();
    let c = spec.control();
    let (lo, hi) = zone_sigma(zone);
    let tail_sigma = sigma_of(spec.tail_start());

    // finite part, with every split inside it as a break point
    let finite_hi = hi.unwrap_or(tail_sigma);
    let mut cuts: Vec<f64> = vec![lo];
    for &r in &spec.zone_splits {
        let s = sigma_of(r);
        if s > lo && s < finite_hi {
            cuts.push(s);
        }
    }
    cuts.push(finite_hi);
    let mut breaks: Vec<f64> = Vec::new();
    let mut planned = 0usize;
    for w in cuts.windows(2) {
        if w[1] <= w[0] {
            continue;
        }
        let k = panel_count(osc, w[0], w[1], t, spec);
        planned += k;
        let b = uniform_breaks(w[0], w[1], k);
        if breaks.is_empty() {
            breaks.extend(b);
        } else {
            breaks.extend(&b[1..]);
        }
    }
    if planned > spec.max_panels {
        return Err(Error::CostGuard(format!(
            "t = {t}: {planned} panels needed for oscillation resolution, budget {}",
            spec.max_panels
        )));
    }
    let head = integrate(&f, &breaks, &c)?;
    let (value, err) = if hi.is_some() {
        (head.value, head.err)
    } else {
        let mut floor = d.decay_sigma();
        if d.has_power_tail() {
            floor = floor.max(t.sqrt());
        }
        let tail = Tail {
            start: finite_hi,
            floor,
            max_doublings: 64,
        };
        let budget = super::Control {
            max_panels: spec.max_panels.saturating_sub(head.panels).max(16),
            ..c
        };
        let res = integrate_tail(
            &f,
            &tail,
            |a, b| panel_count(osc, a, b, t, spec),
            &budget,
            head.value,
        )?;
        if !res.converged {
            return Err(Error::TailDivergent(tail.max_doublings));
        }
        (head.value.add(res.est.value), head.err.add(res.est.err))
    };
    let omega = surface_area(spec.n);
    Ok(Sample {
        t,
        value: value.mul_f64(omega),
        err: err.mul_f64(omega),
    })
}

/// Squared norms over an increasing time grid.
pub fn norm_series(
    d: &RadialSpectrum,
    kind: NormKind,
    zone: Zone,
    t_grid: &[f64],
    spec: &QuadSpec,
) -> Result<NormSeries> {
    if t_grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(domain("t_grid", "strictly increasing", f64::NAN));
    }
    let samples = t_grid
        .iter()
        .map(|&t| norm_value(d, kind, zone, t, spec))
        .collect::<Result<Vec<_>>>()?;
    Ok(NormSeries {
        n: spec.n,
        kind,
        zone,
        samples,
    })
}

/// ω_n ∫ (1+Λ)^s |û|² r^{n−1} dr, flagged divergent when the tail never settles.
pub(crate) fn y_norm_sq(d: &SpectrumComponent, s: f64, spec: &QuadSpec) -> Result<YNorm> {
    spec.validate()?;
    let n = d.n;
    let f = |sigma: f64| {
        let lam = sigma * sigma;
        let w = d.eval_weighted(lam);
        check(
            sigma,
            w.sqr()
                .mul_f64((1.0 + lam).powf(s) * radial_jacobian(n, sigma)),
        )
    };
    let c = spec.control();
    let tail_sigma = sigma_of(spec.tail_start());
    let mut cuts = vec![0.0];
    for &r in &spec.zone_splits {
        cuts.push(sigma_of(r));
    }
    let mut breaks = vec![0.0];
    for w in cuts.windows(2) {
        breaks.extend(&uniform_breaks(w[0], w[1], 8)[1..]);
    }
    let head = integrate(&f, &breaks, &c)?;
    let tail = Tail {
        start: tail_sigma,
        floor: d.decay_sigma(),
        max_doublings: 200,
    };
    let res = integrate_tail(&f, &tail, |_, _| 8, &c, head.value)?;
    if !res.converged {
        return Ok(YNorm::Divergent);
    }
    let omega = surface_area(n);
    Ok(YNorm::Finite {
        value: head.value.add(res.est.value).to_f64() * omega,
        err: head.err.add(res.est.err).to_f64() * omega,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral_data::DataSpec;

    #[test]
    fn jacobian_matches_radial_measure() {
        // r^{n-1} dr/dσ = e^{nΛ/2} j(σ)
        for n in 1..=9u32 {
            for sigma in [0.05, 0.4, 1.0, 2.0] {
                let lam: f64 = sigma * sigma;
                let r = lam.exp_m1().sqrt();
                let drds = sigma * lam.exp() / r;
                let direct = r.powi(n as i32 - 1) * drds;
                let via = (n as f64 * lam / 2.0).exp() * radial_jacobian(n, sigma);
                assert!((direct / via - 1.0).abs() < 1e-12, "n={n} sigma={sigma}");
            }
        }
        assert_eq!(radial_jacobian(1, 0.0), 1.0);
    }

    #[test]
    fn zero_data_gives_zero() {
        let z = RadialSpectrum::from_specs(DataSpec::Zero, DataSpec::Zero, 3).unwrap();
        let spec = QuadSpec::new(3).with_tol(1e-6);
        for kind in NormKind::ALL {
            let s = norm_value(&z, kind, Zone::All, 5.0, &spec).unwrap();
            assert!(s.value.is_zero(), "{kind}");
        }
    }

    #[test]
    fn gaussian_l2_at_t0() {
        // ‖û₀‖² = ω₁ ∫₀^∞ π e^{-r²/2} dr = 2π √(π/2) for n = 1
        let g = DataSpec::Gaussian {
            alpha: 1.0,
            amplitude: 1.0,
        };
        let d = RadialSpectrum::from_specs(g, DataSpec::Zero, 1).unwrap();
        let spec = QuadSpec::new(1).with_tol(1e-10);
        let s = norm_value(&d, NormKind::U, Zone::All, 0.0, &spec).unwrap();
        let pi = std::f64::consts::PI;
        let want = 2.0 * pi * (pi / 2.0).sqrt();
        assert!((s.value.to_f64() / want - 1.0).abs() < 1e-9);
    }

    #[test]
    fn parse_labels() {
        for k in NormKind::ALL {
            assert_eq!(k.label().parse::<NormKind>().unwrap(), k);
        }
        assert_eq!("highmid".parse::<Zone>().unwrap(), Zone::HighMid);
        assert!("upper".parse::<Zone>().is_err());
    }
}
