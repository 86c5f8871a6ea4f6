//! Quadratic Gauss sums and the Fresnel-type integral `∫₀¹ e^{-2πiλx²} dx`.

use sqdiff::arcs::{
    fresnel_integral, gauss_magnitude_expected, gauss_sum, oscillatory_bound_check,
};

fn main() -> sqdiff::Result<()> {
    println!("{:>3} {:>24} {:>8} {:>8}", "q", "S(1,q)", "|S|", "expected");
    for q in 1..=12 {
        let s = gauss_sum(1, q)?;
        println!(
            "{q:>3} {:>24} {:>8.4} {:>8.4}",
            format!("{:.4}", s),
            s.norm(),
            gauss_magnitude_expected(q)
        );
    }
    println!();
    println!(
        "{:>10} {:>28} {:>8} {:>8}",
        "lambda", "I(lambda)", "|I|", "bound"
    );
    for lambda in [0.0, 0.1, 1.0, 10.0, 1e3, 1e4, 1e6, 1e8] {
        let i = fresnel_integral(lambda)?;
        let check = oscillatory_bound_check(lambda)?;
        println!(
            "{lambda:>10.1e} {:>28} {:>8.5} {:>8.5}",
            format!("{:.6}", i),
            i.norm(),
            check.bound
        );
    }
    Ok(())
}
