//! Initial-data families: masses, low-frequency split and Y^s norms.
//!
//! cargo run --example data_norms

use logdamp::radial_quadrature::QuadSpec;
use logdamp::spectral_data::{y_norm, DataSpec, YNorm};

fn main() {
    let n = 3;
    let spec = QuadSpec::new(n);
    for sel in [
        "gaussian",
        "gaussian:alpha=0.5,amplitude=2",
        "zero_mass",
        "log_tail:m=1,beta=0.2",
    ] {
        let d: DataSpec = sel.parse().unwrap();
        let c = d.build(n).unwrap();
        println!(
            "{sel}: mass {:.6}, lip {:.6}, u(0.5) = {:.6}",
            c.mass,
            c.lip_const,
            c.eval(0.5)
        );
        let parts = c.low_freq_parts(0.5);
        println!(
            "  A = {:.6}, B = {:.6}, P = {:.6}",
            parts.a_part, parts.b_part, parts.p_part
        );
        for s in [0.0, 1.0, 1.1, 1.2, 2.0] {
            match y_norm(&c, s, &spec).unwrap() {
                YNorm::Finite { value, err } => {
                    println!("  |u|^2_Y^{s} = {value:.10e} (err {err:.1e})")
                }
                YNorm::Divergent => println!("  |u|^2_Y^{s} diverges"),
            }
        }
    }
    for bad in ["gaussian:alpha=-1", "log_tail:m=1", "cauchy"] {
        println!("{bad}: {}", bad.parse::<DataSpec>().unwrap_err());
    }
}
