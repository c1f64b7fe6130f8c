//! Initial data given by radial Fourier profiles.
//!
//! Selector grammar, as accepted on the command line:
//!
//! ```text
//! selector := name [ ":" key "=" value { "," key "=" value } ]
//! gaussian:alpha=A,amplitude=K     A > 0 (default 1), K real (default 1)
//! zero_mass:alpha=A                A > 0 (default 1)
//! log_tail:m=M,beta=B              M >= 0, 0 < B <= 1, both required
//! zero
//! ```
//!
//! Unknown names and keys are rejected.

use crate::error::{domain, Error, Result};
use crate::radial_quadrature::{self, QuadSpec};
use crate::scaled::Scaled;
use crate::symbol_core::r_unit;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

/// A parsed data selector, not yet bound to a dimension.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DataSpec {
    Gaussian { alpha: f64, amplitude: f64 },
    ZeroMass { alpha: f64 },
    LogTail { m: f64, beta: f64 },
    Zero,
}

impl fmt::Display for DataSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DataSpec::Gaussian { alpha, amplitude } => {
                write!(f, "gaussian:alpha={alpha},amplitude={amplitude}")
            }
            DataSpec::ZeroMass { alpha } => write!(f, "zero_mass:alpha={alpha}"),
            DataSpec::LogTail { m, beta } => write!(f, "log_tail:m={m},beta={beta}"),
            DataSpec::Zero => write!(f, "zero"),
        }
    }
}

impl FromStr for DataSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, rest) = match s.split_once(':') {
            Some((n, r)) => (n.trim(), Some(r)),
            None => (s.trim(), None),
        };
        let mut kv: Vec<(String, f64)> = Vec::new();
        if let Some(rest) = rest {
            for item in rest.split(',') {
                let (k, v) = item
                    .split_once('=')
                    .ok_or_else(|| Error::Selector(format!("expected key=value, got '{item}'")))?;
                let k = k.trim().to_string();
                let v: f64 = v
                    .trim()
                    .parse()
                    .map_err(|_| Error::Selector(format!("'{v}' is not a number for key '{k}'")))?;
                if kv.iter().any(|(q, _)| *q == k) {
                    return Err(Error::Selector(format!("key '{k}' given twice")));
                }
                kv.push((k, v));
            }
        }
        let allowed: &[&str] = match name {
            "gaussian" => &["alpha", "amplitude"],
            "zero_mass" => &["alpha"],
            "log_tail" => &["m", "beta"],
            "zero" => &[],
            other => {
                return Err(Error::Selector(format!(
                    "unknown data family '{other}' (expected gaussian, zero_mass, log_tail or zero)"
                )))
            }
        };
        for (k, _) in &kv {
            if !allowed.contains(&k.as_str()) {
                return Err(Error::Selector(format!("unknown key '{k}' for '{name}'")));
            }
        }
        let get = |k: &str| kv.iter().find(|(q, _)| q == k).map(|(_, v)| *v);
        let need =
            |k: &str| get(k).ok_or_else(|| Error::Selector(format!("'{name}' requires key '{k}'")));
        let spec = match name {
            "gaussian" => DataSpec::Gaussian {
                alpha: get("alpha").unwrap_or(1.0),
                amplitude: get("amplitude").unwrap_or(1.0),
            },
            "zero_mass" => DataSpec::ZeroMass {
                alpha: get("alpha").unwrap_or(1.0),
            },
            "log_tail" => DataSpec::LogTail {
                m: need("m")?,
                beta: need("beta")?,
            },
            _ => DataSpec::Zero,
        };
        spec.check()?;
        Ok(spec)
    }
}

impl DataSpec {
    /// Gaussian with alpha = 1 and amplitude 1.
    pub fn gaussian() -> Self {
        DataSpec::Gaussian {
            alpha: 1.0,
            amplitude: 1.0,
        }
    }

    fn check(&self) -> Result<()> {
        match *self {
            DataSpec::Gaussian { alpha, amplitude } => {
                if !(alpha > 0.0 && alpha.is_finite()) {
                    return Err(domain("alpha", "alpha > 0", alpha));
                }
                if !amplitude.is_finite() {
                    return Err(domain("amplitude", "finite", amplitude));
                }
            }
            DataSpec::ZeroMass { alpha } => {
                if !(alpha > 0.0 && alpha.is_finite()) {
                    return Err(domain("alpha", "alpha > 0", alpha));
                }
            }
            DataSpec::LogTail { m, beta } => {
                if !(m >= 0.0 && m.is_finite()) {
                    return Err(domain("m", "m >= 0", m));
                }
                if !(beta > 0.0 && beta <= 1.0) {
                    return Err(domain("beta", "0 < beta <= 1", beta));
                }
            }
            DataSpec::Zero => {}
        }
        Ok(())
    }

    /// Binds the selector to a spatial dimension.
    pub fn build(&self, n: u32) -> Result<SpectrumComponent> {
        self.check()?;
        if n == 0 {
            return Err(domain("n", "n >= 1", 0.0));
        }
        let nf = n as f64;
        let (mass, lip_const, tail_c) = match *self {
            DataSpec::Gaussian { alpha, amplitude } => {
                let m = amplitude * (PI / alpha).powf(nf / 2.0);
                (m, m.abs() / (2.0 * alpha) * sup_r_gauss(alpha), 0.0)
            }
            DataSpec::ZeroMass { alpha } => (0.0, sup_r_gauss(alpha), 0.0),
            DataSpec::LogTail { m, beta } => {
                let core = PI.powf(nf / 2.0);
                let ru = r_unit();
                let at_unit = core * (-ru * ru / 4.0).exp();
                // tail at Λ = 1 is c e^{-n/4} 2^{-(m+1+beta)/2}
                let c = at_unit / ((-nf / 4.0).exp() * 2f64.powf(-(m + 1.0 + beta) / 2.0));
                (core, core / 2.0 * sup_r_gauss(1.0), c)
            }
            DataSpec::Zero => (0.0, 0.0, 0.0),
        };
        Ok(SpectrumComponent {
            spec: *self,
            n,
            mass,
            lip_const,
            tail_c,
        })
    }
}

/// sup of r e^{-r²/(4α)} over (0, 1].
fn sup_r_gauss(alpha: f64) -> f64 {
    let rs = (2.0 * alpha).sqrt();
    let r = rs.min(1.0);
    r * (-r * r / (4.0 * alpha)).exp()
}

/// One radial profile r ↦ û(r) in a fixed dimension.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectrumComponent {
    pub spec: DataSpec,
    pub n: u32,
    /// P = û(0)
    pub mass: f64,
    /// K with |û(r) − P| ≤ K r on (0, 1]
    pub lip_const: f64,
    tail_c: f64,
}

impl SpectrumComponent {
    pub fn name(&self) -> String {
        self.spec.to_string()
    }

    /// û(r).
    pub fn eval(&self, r: f64) -> f64 {
        let lam = (r * r).ln_1p();
        self.eval_weighted(lam)
            .mul(Scaled::exp(-(self.n as f64) * lam / 4.0))
            .to_f64()
    }

    /// û(r)·(1+r²)^{n/4} at Λ = log(1+r²), in scaled form.
    ///
    /// Quadrature works with this product because the radial measure
    /// r^{n−1}dr carries the compensating factor (1+r²)^{n/2}; keeping the two
    /// apart would cancel huge exponents at large Λ.
    pub fn eval_weighted(&self, lam: f64) -> Scaled {
        let nq = self.n as f64 / 4.0;
        match self.spec {
            DataSpec::Gaussian { alpha, .. } => gauss_weighted(self.mass, alpha, nq, lam),
            DataSpec::ZeroMass { alpha } => {
                let r2 = lam.exp_m1();
                if r2 == 0.0 || !r2.is_finite() {
                    return Scaled::ZERO;
                }
                Scaled::new(r2, nq * lam - r2 / (4.0 * alpha))
            }
            DataSpec::LogTail { m, beta } => {
                if lam <= 1.0 {
                    gauss_weighted(self.mass, 1.0, nq, lam)
                } else {
                    Scaled::from_f64(self.tail_c * (1.0 + lam).powf(-(m + 1.0 + beta) / 2.0))
                }
            }
            DataSpec::Zero => Scaled::ZERO,
        }
    }

    /// Whether ‖·‖_{Y^s} is finite.
    pub fn y_norm_finite(&self, s: f64) -> bool {
        match self.spec {
            DataSpec::LogTail { m, beta } => s < m + beta,
            _ => true,
        }
    }

    /// Decays only like a power of Λ at high frequency.
    pub fn has_power_tail(&self) -> bool {
        matches!(self.spec, DataSpec::LogTail { .. })
    }

    /// σ = √Λ beyond which the profile is below e^{-800} relative to its mass,
    /// or 1 for power tails (their cut-off is decided by the quadrature).
    pub fn decay_sigma(&self) -> f64 {
        match self.spec {
            DataSpec::Gaussian { alpha, .. } | DataSpec::ZeroMass { alpha } => {
                (3200.0 * alpha).ln_1p().sqrt().max(1.0)
            }
            _ => 1.0,
        }
    }

    pub fn low_freq_parts(&self, r: f64) -> LowFreqParts {
        let u = self.eval(r);
        LowFreqParts {
            a_part: u - self.mass,
            b_part: 0.0,
            p_part: self.mass,
        }
    }

    /// Physical-side ‖u‖_{1,1} = ∫(1+|x|)|u(x)|dx where it has a closed radial form.
    pub fn l11_norm(&self) -> Option<f64> {
        let n = self.n;
        let omega = radial_quadrature::surface_area(n);
        let nf = n as f64;
        match self.spec {
            DataSpec::Gaussian { alpha, amplitude } => {
                // u(x) = amplitude e^{-α|x|²}
                let m0 = (PI / alpha).powf(nf / 2.0);
                let m1 = omega * radial_quadrature::gamma_half(n + 1)
                    / (2.0 * alpha.powf((nf + 1.0) / 2.0));
                Some(amplitude.abs() * (m0 + m1))
            }
            DataSpec::ZeroMass { alpha } => {
                // u = -Δg with g(x) = (α/π)^{n/2} e^{-α|x|²}
                let pref = (alpha / PI).powf(nf / 2.0);
                let f = move |r: f64| {
                    let lap =
                        (2.0 * alpha * nf - 4.0 * alpha * alpha * r * r) * (-alpha * r * r).exp();
                    omega * pref * (1.0 + r) * lap.abs() * r.powi(n as i32 - 1)
                };
                let mut spec = QuadSpec::new(1);
                spec.tol = 1e-12;
                let kink = (nf / (2.0 * alpha)).sqrt();
                let a = radial_quadrature::radial_integral(&f, &spec, 0.0, Some(kink)).ok()?;
                let b = radial_quadrature::radial_integral(&f, &spec, kink, None).ok()?;
                Some(a.value.to_f64() + b.value.to_f64())
            }
            _ => None,
        }
    }
}

fn gauss_weighted(mass: f64, alpha: f64, nq: f64, lam: f64) -> Scaled {
    let r2 = lam.exp_m1();
    if !r2.is_finite() {
        return Scaled::ZERO;
    }
    Scaled::new(mass, nq * lam - r2 / (4.0 * alpha))
}

/// Decomposition û = A − iB + P.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LowFreqParts {
    pub a_part: f64,
    pub b_part: f64,
    pub p_part: f64,
}

impl LowFreqParts {
    pub fn reconstruct(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.a_part + self.p_part, -self.b_part)
    }
}

/// An initial-data pair (u₀, u₁) in one dimension.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadialSpectrum {
    pub u0: SpectrumComponent,
    pub u1: SpectrumComponent,
}

impl RadialSpectrum {
    pub fn new(u0: SpectrumComponent, u1: SpectrumComponent) -> Result<Self> {
        if u0.n != u1.n {
            return Err(domain(
                "n",
                "both components in the same dimension",
                u1.n as f64,
            ));
        }
        Ok(RadialSpectrum { u0, u1 })
    }

    pub fn from_specs(u0: DataSpec, u1: DataSpec, n: u32) -> Result<Self> {
        Self::new(u0.build(n)?, u1.build(n)?)
    }

    pub fn n(&self) -> u32 {
        self.u0.n
    }

    pub fn name(&self) -> String {
        format!("{}/{}", self.u0.name(), self.u1.name())
    }

    pub fn eval0(&self, r: f64) -> f64 {
        self.u0.eval(r)
    }

    pub fn eval1(&self, r: f64) -> f64 {
        self.u1.eval(r)
    }

    pub fn p0(&self) -> f64 {
        self.u0.mass
    }

    pub fn p1(&self) -> f64 {
        self.u1.mass
    }

    pub fn lip_const(&self) -> f64 {
        self.u0.lip_const.max(self.u1.lip_const)
    }

    pub fn has_power_tail(&self) -> bool {
        self.u0.has_power_tail() || self.u1.has_power_tail()
    }

    pub fn decay_sigma(&self) -> f64 {
        self.u0.decay_sigma().max(self.u1.decay_sigma())
    }
}

/// Result of a Y^s norm computation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum YNorm {
    /// squared norm with error estimate
    Finite {
        value: f64,
        err: f64,
    },
    Divergent,
}

/// ‖û‖²_{Y^s} = ω_n ∫ (1+Λ)^s |û|² r^{n−1} dr.
pub fn y_norm(d: &SpectrumComponent, s: f64, spec: &QuadSpec) -> Result<YNorm> {
    if !(s >= 0.0) {
        return Err(domain("s", "s >= 0", s));
    }
    radial_quadrature::norms::y_norm_sq(d, s, spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_grammar() {
        let g: DataSpec = "gaussian:alpha=1".parse().unwrap();
        assert_eq!(
            g,
            DataSpec::Gaussian {
                alpha: 1.0,
                amplitude: 1.0
            }
        );
        let l: DataSpec = "log_tail:m=1,beta=0.2".parse().unwrap();
        assert_eq!(l, DataSpec::LogTail { m: 1.0, beta: 0.2 });
        assert_eq!("zero".parse::<DataSpec>().unwrap(), DataSpec::Zero);
        assert!("gaussian:width=1".parse::<DataSpec>().is_err());
        assert!("cauchy".parse::<DataSpec>().is_err());
        assert!("log_tail:m=1".parse::<DataSpec>().is_err());
        assert!("log_tail:m=1,beta=0".parse::<DataSpec>().is_err());
        assert!("gaussian:alpha=-1".parse::<DataSpec>().is_err());
        // display round trip
        let again: DataSpec = l.to_string().parse().unwrap();
        assert_eq!(again, l);
    }

    #[test]
    fn gaussian_values() {
        let g = DataSpec::Gaussian {
            alpha: 1.0,
            amplitude: 1.0,
        }
        .build(2)
        .unwrap();
        assert!((g.eval(0.0) - PI).abs() < 1e-15);
        assert!((g.eval(2.0) - PI * (-1f64).exp()).abs() < 1e-14);
        assert_eq!(g.mass, PI);
        let lp = g.low_freq_parts(0.5);
        assert!((lp.a_part - PI * ((-1.0f64 / 16.0).exp() - 1.0)).abs() < 1e-14);
    }

    #[test]
    fn zero_mass_values() {
        let z = DataSpec::ZeroMass { alpha: 1.0 }.build(2).unwrap();
        assert_eq!(z.eval(0.0), 0.0);
        assert!((z.eval(2.0) - 4.0 * (-1f64).exp()).abs() < 1e-14);
        assert!(z.lip_const <= 1.0);
    }

    #[test]
    fn log_tail_continuity() {
        let d = DataSpec::LogTail { m: 1.0, beta: 0.2 }.build(8).unwrap();
        let lam = 1.0;
        let left = gauss_weighted(d.mass, 1.0, 2.0, lam);
        let right = Scaled::from_f64(d.tail_c * 2f64.powf(-1.1));
        assert!((left.ratio(right) - 1.0).abs() < 1e-14);
        assert!(d.mass > 0.0);
        assert!(d.y_norm_finite(1.0) && !d.y_norm_finite(2.0));
    }
}
