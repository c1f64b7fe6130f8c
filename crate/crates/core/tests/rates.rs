// Regime classification and slope or band fitting.

use logdamp::decay_rates::{classify, fit_rate, two_sided_band, Regime, BAND_CAP};
use logdamp::profiles::ProfileKind;
use logdamp::radial_quadrature::{NormKind, NormSeries, Sample, Zone};
use logdamp::scaled::Scaled;

fn series(ts: &[f64], f: impl Fn(f64) -> f64) -> NormSeries {
    NormSeries {
        n: 2,
        kind: NormKind::U,
        zone: Zone::All,
        samples: ts
            .iter()
            .map(|&t| Sample {
                t,
                value: Scaled::from_f64(f(t)),
                err: Scaled::ZERO,
            })
            .collect(),
    }
}

fn log_grid(lo: f64, hi: f64, k: usize) -> Vec<f64> {
    (0..k)
        .map(|i| lo * (hi / lo).powf(i as f64 / (k - 1) as f64))
        .collect()
}

#[test]
fn classify_examples() {
    let a = classify(3, 1.0);
    assert_eq!(a.regime, Regime::DiffusionLike);
    assert_eq!(a.profile, Some(ProfileKind::Phi1));
    assert_eq!(a.diff_exponent, Some(-1.0));
    let b = classify(8, 1.0);
    assert_eq!(b.regime, Regime::WaveLike);
    assert_eq!(b.profile, Some(ProfileKind::Phi2));
    assert_eq!(b.diff_exponent, Some(-2.0));
    let c = classify(4, 1.0);
    assert_eq!(c.regime, Regime::Both);
    assert_eq!(c.profile, Some(ProfileKind::PhiSum));
    assert_eq!(c.diff_exponent, Some(-1.5));
    assert_eq!(classify(4, 0.5).regime, Regime::UncoveredByPaper);
}

#[test]
fn exact_power_law_fit() {
    let s = series(&log_grid(10.0, 1e4, 12), |t| t.powf(-1.5));
    let f = fit_rate(&s, (10.0, 1e4)).unwrap();
    assert!((f.slope + 1.5).abs() < 1e-13);
    assert!(f.residual < 1e-13);
}

#[test]
fn perturbed_power_law_fit() {
    let s = series(&log_grid(1e2, 1e4, 15), |t| t.powi(-2) * (1.0 + 1.0 / t));
    let f = fit_rate(&s, (1e2, 1e4)).unwrap();
    assert!(f.slope >= -2.01 && f.slope <= -1.99, "{}", f.slope);
}

#[test]
fn exact_power_law_band() {
    let s = series(&log_grid(1e2, 1e4, 10), |t| 3.0 * t.powi(-1));
    let b = two_sided_band(&s, -1.0, (1e2, 1e4), BAND_CAP).unwrap();
    assert!((b.ratio - 1.0).abs() < 1e-13);
    assert!(b.pass && !b.drift);
    // compensating with the wrong exponent drifts
    let b = two_sided_band(&s, -0.5, (1e2, 1e4), BAND_CAP).unwrap();
    assert!(b.drift && !b.pass);
}

#[test]
fn fit_errors() {
    let s = series(&log_grid(10.0, 100.0, 4), |t| 1.0 / t);
    assert!(fit_rate(&s, (10.0, 100.0)).is_err());
    let s = series(&log_grid(10.0, 100.0, 8), |t| {
        if t > 50.0 {
            0.0
        } else {
            1.0 / t
        }
    });
    assert!(fit_rate(&s, (10.0, 100.0)).is_err());
}
