//! Runs a few verification suites and prints their summaries.

use sqdiff::report::{emit_report, Format};
use sqdiff::suites;

fn main() -> sqdiff::Result<()> {
    let reports = [
        suites::gauss_suite(100)?,
        suites::oscillatory_suite(0.1, 1e8, 50)?,
        suites::weyl_suite(&[10_000], 2_000)?,
        suites::identity_suite(50, 1024, 1)?,
        suites::arcs_suite(&[10_000, 100_000], &[0.3], 500, 1)?,
    ];
    for r in &reports {
        println!(
            "{:<12} passed={} failed={} hard failures={}",
            r.suite, r.summary.passed, r.summary.failed, r.summary.hard_failed
        );
    }
    let csv = emit_report(&reports[0], Format::Csv);
    println!("{}", csv.lines().take(3).collect::<Vec<_>>().join("\n"));
    Ok(())
}
