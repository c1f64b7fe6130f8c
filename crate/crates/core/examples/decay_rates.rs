//! Regime classification and a fitted decay exponent.
//!
//! cargo run --release --example decay_rates

use logdamp::decay_rates::{classify, fit_rate, two_sided_band, window_grid};
use logdamp::radial_quadrature::{norm_series, NormKind, QuadSpec, Zone};
use logdamp::spectral_data::{DataSpec, RadialSpectrum};

fn main() {
    for (n, l) in [
        (2, 1.0),
        (3, 1.0),
        (4, 1.0),
        (6, 1.0),
        (8, 1.0),
        (10, 1.5),
        (3, 0.5),
    ] {
        let r = classify(n, l);
        println!(
            "n = {n:>2}, l = {l}: {:?}, profile {:?}, diff exponent {:?}, solution exponent {:?}",
            r.regime, r.profile, r.diff_exponent, r.sol_exponent_upper
        );
    }
    let n = 3;
    let d = RadialSpectrum::from_specs(DataSpec::gaussian(), DataSpec::gaussian(), n).unwrap();
    let spec = QuadSpec::new(n).with_tol(1e-3);
    let s = norm_series(&d, NormKind::U, Zone::All, &window_grid(1e2, 1e4), &spec).unwrap();
    let f = fit_rate(&s, (1e2, 1e4)).unwrap();
    println!(
        "n = 3 Gaussian: |u| ~ t^{:.4} (theory -0.75), residual {:.1e}",
        f.norm_slope(),
        f.residual
    );
    let b = two_sided_band(&s, -(n as f64) / 2.0, (1e2, 1e4), 9.0).unwrap();
    println!(
        "t^(3/4)|u| in [{:.5}, {:.5}], drift {}",
        b.min.sqrt(),
        b.max.sqrt(),
        b.drift
    );
}
