//! Real numbers stored as `mant * exp(ln_scale)`.
//!
//! Norms of the asymptotic profiles fall far below the smallest positive
//! `f64` long before t = 1e4 (for Gaussian data the oscillatory profile is
//! of order e^{-1800} there), and log-log fitting needs them anyway. The
//! mantissa is only renormalised when it leaves a comfortable range so
//! that ordinary-sized values keep full precision.

use std::fmt;

const HI: f64 = 1e150;
const LO: f64 = 1e-150;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Scaled {
    pub mant: f64,
    pub ln_scale: f64,
}

impl Scaled {
    pub const ZERO: Scaled = Scaled {
        mant: 0.0,
        ln_scale: f64::NEG_INFINITY,
    };

    pub fn new(mant: f64, ln_scale: f64) -> Self {
        if mant == 0.0 || ln_scale == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        let a = mant.abs();
        if (LO..=HI).contains(&a) || !a.is_finite() {
            Scaled { mant, ln_scale }
        } else {
            Scaled {
                mant: mant.signum(),
                ln_scale: ln_scale + a.ln(),
            }
        }
    }

    pub fn from_f64(x: f64) -> Self {
        Self::new(x, 0.0)
    }

    /// Builds `exp(ln)` exactly in log form.
    pub fn exp(ln: f64) -> Self {
        Self::new(1.0, ln)
    }

    pub fn is_zero(&self) -> bool {
        self.mant == 0.0
    }

    pub fn is_finite(&self) -> bool {
        self.mant.is_finite() && !self.ln_scale.is_nan() && self.ln_scale != f64::INFINITY
    }

    /// Plain value; underflows to 0 or overflows to inf like ordinary arithmetic.
    pub fn to_f64(self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            self.mant * self.ln_scale.exp()
        }
    }

    /// ln |x|, or -inf for zero.
    pub fn ln_abs(self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            self.mant.abs().ln() + self.ln_scale
        }
    }

    pub fn abs(self) -> Self {
        Scaled {
            mant: self.mant.abs(),
            ln_scale: self.ln_scale,
        }
    }

    pub fn neg(self) -> Self {
        Scaled {
            mant: -self.mant,
            ln_scale: self.ln_scale,
        }
    }

    pub fn mul(self, o: Scaled) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::ZERO;
        }
        Self::new(self.mant * o.mant, self.ln_scale + o.ln_scale)
    }

    pub fn mul_f64(self, k: f64) -> Self {
        Self::new(self.mant * k, self.ln_scale)
    }

    pub fn sqr(self) -> Self {
        self.mul(self)
    }

    /// Mantissa expressed relative to `exp(s)`.
    pub fn mant_at(self, s: f64) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            self.mant * (self.ln_scale - s).exp()
        }
    }

    pub fn add(self, o: Scaled) -> Self {
        if self.is_zero() {
            return o;
        }
        if o.is_zero() {
            return self;
        }
        let s = self.ln_scale.max(o.ln_scale);
        Self::new(self.mant_at(s) + o.mant_at(s), s)
    }

    pub fn sub(self, o: Scaled) -> Self {
        self.add(o.neg())
    }

    /// Relative comparison of magnitudes; returns `self / o` as f64.
    pub fn ratio(self, o: Scaled) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        self.mant / o.mant * (self.ln_scale - o.ln_scale).exp()
    }

    /// Decimal text with 17 significant digits, exact even outside the f64 range.
    pub fn to_sci(self) -> String {
        if self.is_zero() {
            return format!("{:.16e}", 0.0);
        }
        let plain = self.to_f64();
        if plain.is_finite() && plain.abs() >= f64::MIN_POSITIVE {
            return format!("{:.16e}", plain);
        }
        let log10 = self.ln_abs() / std::f64::consts::LN_10;
        let mut e = log10.floor();
        let mut m = 10f64.powf(log10 - e);
        if m >= 10.0 {
            m /= 10.0;
            e += 1.0;
        }
        let sign = if self.mant < 0.0 { "-" } else { "" };
        format!("{sign}{m:.16}e{}", e as i64)
    }
}

impl fmt::Display for Scaled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sci())
    }
}

/// Neumaier-compensated sum of scaled terms, in the order given.
pub fn sum_scaled(terms: impl IntoIterator<Item = Scaled> + Clone) -> Scaled {
    let s = terms
        .clone()
        .into_iter()
        .filter(|x| !x.is_zero())
        .map(|x| x.ln_scale + x.mant.abs().ln())
        .fold(f64::NEG_INFINITY, f64::max);
    if s == f64::NEG_INFINITY {
        return Scaled::ZERO;
    }
    let mut acc = Neumaier::default();
    for x in terms {
        acc.add(x.mant_at(s));
    }
    Scaled::new(acc.value(), s)
}

/// Neumaier's improved Kahan summation.
#[derive(Clone, Copy, Debug, Default)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}
