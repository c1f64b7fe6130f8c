//! Reference integrals, their Laplace limits and zone additivity of a norm.
//!
//! cargo run --example quadrature

use logdamp::radial_quadrature::{
    gamma_half, norm_value, ref_integral_ip, ref_integral_jp, NormKind, QuadSpec, Zone,
};
use logdamp::spectral_data::{DataSpec, RadialSpectrum};

fn main() {
    for t in [2.0f64, 10.0, 30.0] {
        let tail = 2f64.powf(1.0 - t) / (2.0 * (t - 1.0));
        let i1 = ref_integral_ip(1.0, t).unwrap();
        let j1 = ref_integral_jp(1.0, t).unwrap();
        println!(
            "t = {t}: I1 err {:.1e}, J1 err {:.1e}",
            i1 - (1.0 / (2.0 * (t - 1.0)) - tail),
            j1 - tail
        );
    }
    let t = 1e4f64;
    for p in 0..4 {
        let v = t.powf((p as f64 + 1.0) / 2.0) * ref_integral_ip(p as f64, t).unwrap();
        println!(
            "p = {p}: t^((p+1)/2) I_p = {v:.6}, limit {:.6}",
            gamma_half(p + 1) / 2.0
        );
    }
    let d = RadialSpectrum::from_specs(DataSpec::gaussian(), DataSpec::gaussian(), 2).unwrap();
    let spec = QuadSpec::new(2);
    let t = 30.0;
    let whole = norm_value(&d, NormKind::U, Zone::All, t, &spec).unwrap();
    let mut sum = 0.0;
    for z in [Zone::Low, Zone::Mid, Zone::HighMid, Zone::High] {
        let v = norm_value(&d, NormKind::U, z, t, &spec)
            .unwrap()
            .value
            .to_f64();
        println!("zone {:>8}: {v:.12e}", z.label());
        sum += v;
    }
    println!("sum {sum:.12e}, whole {:.12e}", whole.value.to_f64());
}
