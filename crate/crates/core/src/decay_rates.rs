//! Time grids, log-log slope fits, the (n, l) regime classifier and
//! two-sided band checks.
//!
//! Norm series hold *squared* norms. A fitted slope `s` of a squared series
//! corresponds to the L²-norm exponent `s/2`; [`RateFit::norm_slope`] does
//! the conversion and every report says which one it shows.

use crate::error::{Error, Result};
use crate::profiles::ProfileKind;
use crate::radial_quadrature::NormSeries;
use serde::Serialize;

/// t_k = 10·2^{k/2}.
pub fn grid_time(k: u32) -> f64 {
    10.0 * 2f64.powf(k as f64 / 2.0)
}

/// Geometric grid t_k for k in `ks` (inclusive range).
pub fn time_grid(ks: std::ops::RangeInclusive<u32>) -> Vec<f64> {
    ks.map(grid_time).collect()
}

/// Default sweep: k = 0..=19, i.e. t from 10 to about 7241.
pub fn default_grid() -> Vec<f64> {
    time_grid(0..=19)
}

/// Grid points inside [t_min, t_max].
pub fn window_grid(t_min: f64, t_max: f64) -> Vec<f64> {
    default_grid()
        .into_iter()
        .filter(|&t| t >= t_min && t <= t_max)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RateFit {
    /// exponent p of value ~ t^p for the squared series
    pub slope: f64,
    /// ln-value intercept at ln t = 0
    pub intercept: f64,
    pub window: (f64, f64),
    /// max relative deviation of the samples from the fitted power law
    pub residual: f64,
    /// slopes between adjacent samples
    pub local_slopes: Vec<f64>,
    pub samples: usize,
}

impl RateFit {
    /// Exponent of the L² norm itself (half the squared-series slope).
    pub fn norm_slope(&self) -> f64 {
        0.5 * self.slope
    }
}

fn windowed(s: &NormSeries, window: (f64, f64)) -> Vec<(f64, f64)> {
    s.samples
        .iter()
        .filter(|x| x.t >= window.0 && x.t <= window.1)
        .map(|x| (x.t, x.value.ln_abs()))
        .collect()
}

/// Least-squares line through (ln t, ln value) on the window.
pub fn fit_rate(s: &NormSeries, window: (f64, f64)) -> Result<RateFit> {
    let pts = windowed(s, window);
    fit_points(&pts, window)
}

/// Same as [`fit_rate`] for raw (t, ln value) pairs.
pub fn fit_points(pts: &[(f64, f64)], window: (f64, f64)) -> Result<RateFit> {
    if pts.len() < 5 {
        return Err(Error::Fit(format!(
            "need at least 5 samples in [{}, {}], got {}",
            window.0,
            window.1,
            pts.len()
        )));
    }
    if let Some(&(t, _)) = pts.iter().find(|p| !p.1.is_finite()) {
        return Err(Error::Fit(format!("non-positive value at t = {t}")));
    }
    let xs: Vec<f64> = pts.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.1).collect();
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - (intercept + slope * x)).exp_m1().abs())
        .fold(0.0, f64::max);
    let local_slopes = xs
        .windows(2)
        .zip(ys.windows(2))
        .map(|(x, y)| (y[1] - y[0]) / (x[1] - x[0]))
        .collect();
    Ok(RateFit {
        slope,
        intercept,
        window,
        residual,
        local_slopes,
        samples: pts.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BandReport {
    /// min over the window of t^{-exponent}·value
    pub min: f64,
    pub max: f64,
    pub ratio: f64,
    /// local slopes of the compensated series all share a sign and exceed 0.01 in size
    pub drift: bool,
    pub pass: bool,
}

/// Default cap on max/min of the compensated series.
pub const BAND_CAP: f64 = 3.0;

/// Threshold below which a local slope of the compensated series counts as flat.
pub const DRIFT_SLOPE: f64 = 0.01;

/// Checks that t^{-exponent}·value stays in a band over the window.
/// `exponent` refers to the squared series.
pub fn two_sided_band(
    s: &NormSeries,
    exponent: f64,
    window: (f64, f64),
    cap: f64,
) -> Result<BandReport> {
    let pts: Vec<(f64, f64)> = windowed(s, window)
        .into_iter()
        .map(|(t, lv)| (t, lv - exponent * t.ln()))
        .collect();
    if pts.len() < 2 {
        return Err(Error::Fit("band needs at least 2 samples".into()));
    }
    if let Some(&(t, _)) = pts.iter().find(|p| !p.1.is_finite()) {
        return Err(Error::Fit(format!("non-positive value at t = {t}")));
    }
    let lmin = pts.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let lmax = pts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let slopes: Vec<f64> = pts
        .windows(2)
        .map(|w| (w[1].1 - w[0].1) / (w[1].0.ln() - w[0].0.ln()))
        .collect();
    let same_sign = slopes.iter().all(|&x| x > 0.0) || slopes.iter().all(|&x| x < 0.0);
    let drift = same_sign && slopes.iter().all(|x| x.abs() > DRIFT_SLOPE);
    let ratio = (lmax - lmin).exp();
    Ok(BandReport {
        min: lmin.exp(),
        max: lmax.exp(),
        ratio,
        drift,
        pass: ratio <= cap && !drift,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Regime {
    DiffusionLike,
    WaveLike,
    Both,
    UncoveredByPaper,
}

/// Classification of (n, l); exponents refer to L² norms (not squared).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RegimeReport {
    pub n: u32,
    pub l: f64,
    pub regime: Regime,
    pub profile: Option<ProfileKind>,
    /// exponent of ‖u − profile‖
    pub diff_exponent: Option<f64>,
    /// exponent of ‖u‖ where a solution estimate applies
    pub sol_exponent_upper: Option<f64>,
    /// the solution estimate is two-sided (needs P₀ + P₁ ≠ 0)
    pub two_sided: bool,
}

impl RegimeReport {
    /// Drops the two-sided claim when the total mass vanishes.
    pub fn with_masses(mut self, p0: f64, p1: f64) -> Self {
        if p0 + p1 == 0.0 {
            self.two_sided = false;
        }
        self
    }
}

/// Branch tables of the decay theorems. Total on n ≥ 1, l real.
pub fn classify(n: u32, l: f64) -> RegimeReport {
    let nf = n as f64;
    let half = nf / 2.0;
    let lstar = half - 1.0;
    let mut rep = RegimeReport {
        n,
        l,
        regime: Regime::UncoveredByPaper,
        profile: None,
        diff_exponent: None,
        sol_exponent_upper: None,
        two_sided: false,
    };
    if n == 0 || !(l >= 1.0) {
        return rep;
    }
    let diff = |e: f64, reg: Regime, p: ProfileKind| (reg, Some(p), Some(e));
    let branch = if (n <= 2) || (n >= 3 && l >= half) {
        Some(diff(
            -(nf + 2.0) / 4.0,
            Regime::DiffusionLike,
            ProfileKind::Phi1,
        ))
    } else if (n >= 4 && l > lstar && l <= half) || (n == 3 && l <= 1.5) {
        Some(diff(
            -(l + 1.0) / 2.0,
            Regime::DiffusionLike,
            ProfileKind::Phi1,
        ))
    } else if n >= 4 && l == lstar {
        Some(diff(-(nf + 2.0) / 4.0, Regime::Both, ProfileKind::PhiSum))
    } else if ((5..=8).contains(&n) && l < lstar) || (n > 8 && l > half - 3.0 && l < lstar) {
        Some(diff(-nf / 4.0, Regime::WaveLike, ProfileKind::Phi2))
    } else if n > 8 && l <= half - 3.0 {
        Some(diff(-(l + 3.0) / 2.0, Regime::WaveLike, ProfileKind::Phi2))
    } else {
        None
    };
    if let Some((reg, p, e)) = branch {
        rep.regime = reg;
        rep.profile = p;
        rep.diff_exponent = e;
    }
    if n <= 3 || l > lstar {
        rep.sol_exponent_upper = Some(-nf / 4.0);
        rep.two_sided = true;
    } else if n >= 4 && l <= lstar {
        rep.sol_exponent_upper = Some(-(l + 1.0) / 2.0);
    }
    rep
}

/// Squared-norm exponent −(l+1+β) of ‖u‖² for data whose u₁ sits in Y^{l+β}
/// only (log_tail with m = l).
pub fn sharpness_exponent(l: f64, beta: f64) -> f64 {
    -(l + 1.0 + beta)
}
