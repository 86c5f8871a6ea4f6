//! `|Ŝ(α)|` on a grid, with the Dirichlet approximation and Weyl's bound at
//! the largest peaks.

use sqdiff::arcs::{dirichlet_approx, weyl_inequality_bound};
use sqdiff::fourier::spectrum;
use sqdiff::numeric::isqrt;

fn main() -> sqdiff::Result<()> {
    let n = 1_000_000;
    let mut samples = spectrum(n, 1 << 14);
    samples.sort_by(|a, b| b.value.norm().total_cmp(&a.value.norm()));
    println!("N = {n}, sqrt(N) = {}", isqrt(n));
    println!(
        "{:>10} {:>10} {:>10} {:>12}",
        "alpha", "|S(alpha)|", "a/q", "Weyl bound"
    );
    for s in samples.iter().take(12) {
        let r = dirichlet_approx(s.alpha, isqrt(n))?;
        println!(
            "{:>10.6} {:>10.2} {:>10} {:>12.1}",
            s.alpha,
            s.value.norm(),
            format!("{}/{}", r.a, r.q),
            weyl_inequality_bound(n as f64, r.q)
        );
    }
    Ok(())
}
