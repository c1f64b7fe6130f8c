//! Driving the command-line front end in-process.
//!
//! cargo run --example cli

use logdamp::cli_report::run;

fn main() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    for argv in [
        vec!["logdamp", "thresholds"],
        vec!["logdamp", "mode", "--r", "1", "--t", "5", "--oracle"],
        vec![
            "logdamp", "solve", "--n", "2", "--k-max", "4", "--tol", "1e-6",
        ],
        vec![
            "logdamp",
            "solve",
            "--n",
            "2",
            "--data",
            "zero",
            "--data-u0",
            "gaussian",
        ],
    ] {
        out.clear();
        err.clear();
        let code = run(argv.clone(), &mut out, &mut err);
        println!("$ {}  (exit {code})", argv[1..].join(" "));
        print!(
            "{}{}",
            String::from_utf8_lossy(&out),
            String::from_utf8_lossy(&err)
        );
    }
}
