//! Regime thresholds, characteristic roots and the multiplier weight.
//!
//! cargo run --example thresholds

use logdamp::symbol_core::{
    char_roots, k_delta, mult_weight, root_bounds_hold, thresholds, FreqPoint,
};

fn main() {
    let th = thresholds();
    println!("eta    = {:.15}  residual {:.1e}", th.eta, th.residuals[2]);
    println!(
        "delta  = {:.15}  residual {:.1e}",
        th.delta, th.residuals[1]
    );
    println!(
        "delta0 = {:.15}  residual {:.1e}",
        th.delta0, th.residuals[0]
    );
    println!("r_unit = {:.15}  (Lambda = 1)", th.r_unit);
    println!("K_delta = {:.12}", k_delta(th));
    println!();
    println!(
        "{:>10} {:>12} {:>24} {:>24} {:>10} {:>8}",
        "r", "regime", "lambda+", "lambda-", "w", "bounds"
    );
    for r in [0.0, 1e-3, th.eta, th.delta, 0.7, 1.0, 10.0, 1e3] {
        let p = FreqPoint::new(r).unwrap();
        let cr = char_roots(p);
        println!(
            "{r:>10.4} {:>12} {:>24.6} {:>24.6} {:>10.6} {:>8}",
            format!("{:?}", cr.regime),
            cr.lambda_plus,
            cr.lambda_minus,
            mult_weight(p, th).w,
            root_bounds_hold(p, th)
        );
    }
}
