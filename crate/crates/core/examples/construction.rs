//! Doubling a square-difference-free set by the shift `lcm{1..m}²` and
//! checking what the doubled set keeps.
//!
//! ```text
//! cargo run --release --example construction -- 1000000
//! ```

use sqdiff::construction::{admissible_c1, run_construction, EpsilonParams};
use sqdiff::solver::greedy_square;

fn main() -> sqdiff::Result<()> {
    let n: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1_000_000);
    let c1 = admissible_c1(n)?;
    let params = EpsilonParams::from_n(n, c1)?;
    println!(
        "N={n} C1={c1:.4} eps={:.4} m={} q={} shift={}",
        params.epsilon, params.m, params.q_eps, params.shift
    );
    let a = greedy_square(n)?;
    let report = run_construction(&a, "greedy", Some(c1), 1 << 16, 1)?;
    println!(
        "|A|={} |A'|={} |B|={} square pairs in B={}",
        report.size_a, report.size_aprime, report.size_b, report.square_pairs_b
    );
    println!(
        "star maximum {:.1} against {:.1}",
        report.star.measured, report.star.bound
    );
    for (name, holds) in report.hard_checks() {
        println!("  {name:<34} {}", if holds { "ok" } else { "FAILED" });
    }
    Ok(())
}
