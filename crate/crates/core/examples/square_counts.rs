//! Counting pairs with a square difference three ways: a direct scan, an
//! FFT autocorrelation, and the transform-side quadrature.

use sqdiff::fourier::{count_via_integral, default_samples, plancherel_residual};
use sqdiff::rng::{random_set, seeded};
use sqdiff::sets::{count_square_differences_autocorr, count_square_differences_direct};

fn main() -> sqdiff::Result<()> {
    let mut rng = seeded(3);
    for (n, density) in [(100, 0.5), (1_000, 0.2), (4_096, 0.05), (50_000, 0.01)] {
        let s = random_set(&mut rng, n, density);
        let direct = count_square_differences_direct(&s).value();
        let auto = count_square_differences_autocorr(&s)?.value();
        let samples = default_samples(n);
        let integral = count_via_integral(&s, samples)?;
        let plancherel = plancherel_residual(&s, samples)?;
        println!(
            "N={n:>6} |B|={:>5} direct={direct:>7} autocorr={auto:>7} quadrature={integral:>12.6} (R={samples}) plancherel residual={plancherel:.1e}",
            s.len()
        );
    }
    Ok(())
}
