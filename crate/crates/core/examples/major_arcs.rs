//! Arc classification and the main term `√N q⁻¹ S(a,q) I(Nβ)` near a few
//! rationals.

use sqdiff::arcs::{classify_arc, dirichlet_approx, major_arc_decomposition, ArcKind};
use sqdiff::fourier::weyl_sum;

fn main() -> sqdiff::Result<()> {
    let n = 1_000_000u64;
    let eps = 0.3;
    for (a, q, beta) in [
        (0i64, 1u64, 2e-7),
        (1, 2, -3e-7),
        (1, 3, 1e-7),
        (2, 5, 5e-8),
        (3, 7, 0.0),
    ] {
        let alpha = a as f64 / q as f64 + beta;
        let label = classify_arc(alpha, n, eps)?;
        let (main, err) = major_arc_decomposition(n, alpha, a, q)?;
        let kind = match label.kind {
            ArcKind::Major => "major",
            ArcKind::Minor => "minor",
        };
        println!(
            "alpha={alpha:.8} ({a}/{q}{beta:+.0e}) {kind:<5} |S|={:>8.2} |main|={:>8.2} error={err:.3}",
            weyl_sum(n, alpha).norm(),
            main.norm()
        );
    }
    let alpha = std::f64::consts::FRAC_1_SQRT_2;
    let r = dirichlet_approx(alpha, 1000)?;
    println!("1/sqrt(2) ~ {}/{} with error {:.2e}", r.a, r.q, r.err);
    Ok(())
}
