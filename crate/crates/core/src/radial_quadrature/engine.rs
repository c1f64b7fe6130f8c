//! Globally adaptive Gauss–Kronrod (7, 15) quadrature on scaled integrands.
//!
//! Panels are refined largest-error first (ties broken by creation order),
//! and the final value is a compensated sum taken left to right, so results
//! are bit-reproducible for identical inputs.

use crate::error::{Error, Result};
use crate::scaled::{sum_scaled, Scaled};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

/// Integral value with an error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: Scaled,
    pub err: Scaled,
    pub panels: usize,
}

impl Estimate {
    pub const ZERO: Estimate = Estimate {
        value: Scaled::ZERO,
        err: Scaled::ZERO,
        panels: 0,
    };
}

#[derive(Clone, Copy, Debug)]
struct Panel {
    a: f64,
    b: f64,
    val: Scaled,
    err: Scaled,
}

fn gk15<F: Fn(f64) -> Result<Scaled>>(f: &F, a: f64, b: f64) -> Result<Panel> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut fv = [Scaled::ZERO; 15];
    fv[7] = f(c)?;
    for j in 0..7 {
        let dx = h * XGK[j];
        fv[j] = f(c - dx)?;
        fv[14 - j] = f(c + dx)?;
    }
    let s = fv
        .iter()
        .map(|x| x.ln_abs())
        .fold(f64::NEG_INFINITY, f64::max);
    if s == f64::NEG_INFINITY {
        return Ok(Panel {
            a,
            b,
            val: Scaled::ZERO,
            err: Scaled::ZERO,
        });
    }
    let mut m = [0.0; 15];
    for (mi, x) in m.iter_mut().zip(fv.iter()) {
        *mi = x.mant_at(s);
    }
    let mut kron = WGK[7] * m[7];
    let mut gauss = WG[3] * m[7];
    let mut rabs = WGK[7] * m[7].abs();
    for j in 0..7 {
        let pair = m[j] + m[14 - j];
        kron += WGK[j] * pair;
        rabs += WGK[j] * (m[j].abs() + m[14 - j].abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    let mean = 0.5 * kron;
    let mut rasc = WGK[7] * (m[7] - mean).abs();
    for j in 0..7 {
        rasc += WGK[j] * ((m[j] - mean).abs() + (m[14 - j] - mean).abs());
    }
    let ah = h.abs();
    let mut err = ((kron - gauss) * h).abs();
    let rabs = rabs * ah;
    let rasc = rasc * ah;
    if rasc != 0.0 && err != 0.0 {
        err = rasc * (200.0 * err / rasc).powf(1.5).min(1.0);
    }
    err = err.max(50.0 * f64::EPSILON * rabs);
    Ok(Panel {
        a,
        b,
        val: Scaled::new(kron * h, s),
        err: Scaled::new(err, s),
    })
}

struct Key {
    err_ln: f64,
    idx: usize,
}

impl PartialEq for Key {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl Eq for Key {}
impl PartialOrd for Key {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Key {
    fn cmp(&self, o: &Self) -> Ordering {
        // larger error first, then older panel first
        self.err_ln
            .total_cmp(&o.err_ln)
            .then_with(|| o.idx.cmp(&self.idx))
    }
}

/// Controls for one adaptive integration.
#[derive(Clone, Copy, Debug)]
pub struct Control {
    pub rel_tol: f64,
    pub abs_tol: Scaled,
    pub max_panels: usize,
}

fn target(c: &Control, total: Scaled) -> Scaled {
    let rel = total.abs().mul_f64(c.rel_tol);
    if rel.ln_abs() >= c.abs_tol.ln_abs() {
        rel
    } else {
        c.abs_tol
    }
}

fn le(a: Scaled, b: Scaled) -> bool {
    a.is_zero() || a.ln_abs() <= b.ln_abs()
}

/// Adaptive integral over the consecutive intervals given by `breaks`.
pub fn integrate<F: Fn(f64) -> Result<Scaled>>(
    f: &F,
    breaks: &[f64],
    c: &Control,
) -> Result<Estimate> {
    if breaks.len() < 2 {
        return Ok(Estimate::ZERO);
    }
    let initial = breaks.len() - 1;
    if initial > c.max_panels {
        return Err(Error::PanelBudget(initial));
    }
    let mut panels: Vec<Panel> = Vec::with_capacity(initial);
    for w in breaks.windows(2) {
        panels.push(gk15(f, w[0], w[1])?);
    }
    let full_sums = |ps: &Vec<Panel>| {
        (
            sum_scaled(ps.iter().map(|p| p.val)),
            sum_scaled(ps.iter().map(|p| p.err)),
        )
    };
    let (mut total, mut err) = full_sums(&panels);
    if le(err, target(c, total)) {
        return Ok(finish(panels));
    }
    let mut heap: BinaryHeap<Key> = panels
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.err.is_zero())
        .map(|(idx, p)| Key {
            err_ln: p.err.ln_abs(),
            idx,
        })
        .collect();
    loop {
        let Some(Key { idx, .. }) = heap.pop() else {
            break;
        };
        if panels.len() + 1 > c.max_panels {
            return Err(Error::PanelBudget(panels.len()));
        }
        let old = panels[idx];
        let mid = 0.5 * (old.a + old.b);
        if !(mid > old.a && mid < old.b) {
            // cannot split further; leave its error in place
            continue;
        }
        let left = gk15(f, old.a, mid)?;
        let right = gk15(f, mid, old.b)?;
        total = total.sub(old.val).add(left.val).add(right.val);
        err = err.sub(old.err).add(left.err).add(right.err);
        panels[idx] = left;
        let ridx = panels.len();
        panels.push(right);
        for (i, p) in [(idx, left), (ridx, right)] {
            if !p.err.is_zero() {
                heap.push(Key {
                    err_ln: p.err.ln_abs(),
                    idx: i,
                });
            }
        }
        if le(err, target(c, total)) {
            let (t2, e2) = full_sums(&panels);
            total = t2;
            err = e2;
            if le(err, target(c, total)) {
                break;
            }
        }
    }
    Ok(finish(panels))
}

fn finish(mut panels: Vec<Panel>) -> Estimate {
    panels.sort_by(|x, y| x.a.total_cmp(&y.a));
    Estimate {
        value: sum_scaled(panels.iter().map(|p| p.val)),
        err: sum_scaled(panels.iter().map(|p| p.err)),
        panels: panels.len(),
    }
}

/// `k` equal panels on [a, b] (k ≥ 1).
pub fn uniform_breaks(a: f64, b: f64, k: usize) -> Vec<f64> {
    let k = k.max(1);
    let mut v: Vec<f64> = (0..k).map(|i| a + (b - a) * i as f64 / k as f64).collect();
    v.push(b);
    v
}

pub fn plain<F: Fn(f64) -> f64>(f: F) -> impl Fn(f64) -> Result<Scaled> {
    move |x| {
        let y = f(x);
        if y.is_finite() {
            Ok(Scaled::from_f64(y))
        } else {
            Err(Error::NonFinite(x))
        }
    }
}
