//! Asymptotic profiles at a single frequency and their squared norms over time.
//!
//! cargo run --example profiles

use logdamp::profiles::{phi1, phi2, profile_diff, ProfileKind};
use logdamp::radial_quadrature::{norm_value, NormKind, QuadSpec, Zone};
use logdamp::spectral_data::{DataSpec, RadialSpectrum};
use logdamp::symbol_core::FreqPoint;

fn main() {
    let d = RadialSpectrum::from_specs(DataSpec::gaussian(), DataSpec::gaussian(), 2).unwrap();
    for r in [0.05, 0.3, 2.0] {
        let p = FreqPoint::new(r).unwrap();
        let t = 20.0;
        println!(
            "r = {r}: phi1 {:.6e}  phi2 {:.6e}  u-phi {:.6e}",
            phi1(&d, p, t).unwrap().re,
            phi2(&d, p, t).unwrap().re,
            profile_diff(&d, p, t, ProfileKind::PhiSum).unwrap().re
        );
    }
    let spec = QuadSpec::new(2).with_tol(1e-6);
    let mass = d.p0() + d.p1();
    println!(
        "t^(n/2)|phi1|^2 against |P0+P1|^2 pi/2 = {:.6}",
        mass * mass * std::f64::consts::FRAC_PI_2
    );
    for t in [1e2, 1e3, 1e4] {
        let v = norm_value(&d, NormKind::Phi1, Zone::All, t, &spec).unwrap();
        let w = norm_value(&d, NormKind::UMinusPhi1, Zone::All, t, &spec).unwrap();
        println!(
            "t = {t:>7}: {:.6}   |u-phi1|^2 = {}",
            t * v.value.to_f64(),
            w.value.to_sci()
        );
    }
}
