//! Exact `D(N)` for small `N`, the greedy lower bound and the clique upper
//! bounds side by side.
//!
//! ```text
//! cargo run --release --example extremal_values -- 60
//! ```

use sqdiff::solver::{
    greedy_square, solve_exact_d, trivial_bounds, Budget, CliqueCertificate, KNOWN_CERTIFICATES,
};

fn main() -> sqdiff::Result<()> {
    let top: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(60);
    let certs: Vec<CliqueCertificate> = KNOWN_CERTIFICATES
        .iter()
        .map(|s| CliqueCertificate::new(s.to_vec()))
        .collect::<sqdiff::Result<_>>()?;
    println!(
        "{:>4} {:>5} {:>6} {:>8} {:>8}  witness",
        "N", "D(N)", "greedy", "(N+1)/2", "(N+34)/3"
    );
    for n in (1..=top).filter(|n| n % 5 == 0 || *n <= 12) {
        let exact = solve_exact_d(n, Budget::unlimited())?;
        let greedy = greedy_square(n)?.len();
        let (lower, _) = trivial_bounds(n);
        assert!(exact.value as f64 >= lower);
        let b: Vec<String> = certs[..2]
            .iter()
            .map(|c| {
                format!(
                    "{:.1}",
                    *c.bound(n).numer() as f64 / *c.bound(n).denom() as f64
                )
            })
            .collect();
        let w = exact.witness.expect("exact results carry a witness");
        println!(
            "{n:>4} {:>5} {greedy:>6} {:>8} {:>8}  {}",
            exact.value,
            b[0],
            b[1],
            w.to_compact()
        );
    }
    Ok(())
}
