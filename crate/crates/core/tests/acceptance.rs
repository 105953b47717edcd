//! One line per acceptance criterion; exits nonzero if any criterion fails.
//! Runs without the libtest harness so the lines are always shown.

use cuspidal::verify::{check_names, run_check};

fn main() {
    let mut failed = Vec::new();
    for name in check_names() {
        let start = std::time::Instant::now();
        let r = run_check(name, 0).expect("registered check");
        println!(
            "{} {:<30} max_error={:.3e} tol={:.0e} ({:.2?}) {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.max_error,
            r.tolerance,
            start.elapsed(),
            r.detail
        );
        if !r.passed {
            failed.push(r.name);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
