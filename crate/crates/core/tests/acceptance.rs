// Runs the verification suite twice and prints one PASS/FAIL line per check group.

use logdamp::cli_report::verify::{run_suite, CheckResult};
use std::process::ExitCode;

const GROUPS: [&str; 13] = [
    "thresholds",
    "roots",
    "oracle",
    "energy",
    "integrals",
    "profiles",
    "diffusion",
    "both",
    "wave",
    "sharpness",
    "optimality",
    "zones",
    "determinism",
];

fn main() -> ExitCode {
    let mut first = Vec::new();
    let mut second = Vec::new();
    let checks = run_suite(&mut first, false).expect("in-memory write");
    run_suite(&mut second, false).expect("in-memory write");
    let identical = first == second;

    let mut all = true;
    for g in GROUPS {
        let mine: Vec<&CheckResult> = checks.iter().filter(|c| c.group() == g).collect();
        let mut ok = !mine.is_empty() && mine.iter().all(|c| c.passed());
        let mut detail: Vec<String> = mine
            .iter()
            .filter(|c| !c.passed())
            .map(|c| {
                format!(
                    "{} observed {:?}, expected {}",
                    c.check_id, c.observed, c.expected
                )
            })
            .collect();
        if g == "determinism" {
            ok &= identical;
            if !identical {
                detail.push("two suite runs produced different bytes".into());
            }
        }
        all &= ok;
        let status = if ok { "PASS" } else { "FAIL" };
        if detail.is_empty() {
            println!("{status} {g}");
        } else {
            println!("{status} {g}: {}", detail.join("; "));
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
