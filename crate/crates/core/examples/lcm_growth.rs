//! `ln lcm{1..m}` against `m/2` and `m`.

use sqdiff::construction::{lcm_bounds_report, lcm_up_to};

fn main() -> sqdiff::Result<()> {
    for row in lcm_bounds_report(130)?
        .iter()
        .filter(|r| r.m <= 10 || r.m % 10 == 0 || (110..=116).contains(&r.m))
    {
        println!(
            "m={:>3} ln lcm={:>8.3} lower {:<5} upper {}",
            row.m, row.ln_lcm, row.holds_lower, row.holds_upper
        );
    }
    println!("lcm(1..30) = {}", lcm_up_to(30)?);
    Ok(())
}
