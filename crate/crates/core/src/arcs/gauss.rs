//! Quadratic Gauss sums `S(a,q) = Σ_{r<q} e^{-2πi a r²/q}`.

use crate::numeric::{cis_neg_ratio, gcd, ComplexSum};
use crate::{Error, Result};
use num_complex::Complex64;

/// `S(a,q)` for coprime `a, q`, with `a r² mod q` reduced exactly.
pub fn gauss_sum(a: i64, q: u64) -> Result<Complex64> {
    if q == 0 || gcd(a.unsigned_abs(), q) != 1 {
        return Err(Error::NotCoprime { a, q });
    }
    let a = a.rem_euclid(q as i64) as u128;
    let q128 = q as u128;
    Ok((0..q)
        .map(|r| {
            let r = r as u128;
            cis_neg_ratio((a * (r * r % q128) % q128) as u64, q)
        })
        .collect::<ComplexSum>()
        .value())
}

/// `|S(a,q)|` for any `a` coprime to `q`: `√q`, `√(2q)` or `0` by `q mod 4`.
pub fn gauss_magnitude_expected(q: u64) -> f64 {
    assert!(q >= 1);
    match q % 4 {
        0 => (2.0 * q as f64).sqrt(),
        2 => 0.0,
        _ => (q as f64).sqrt(),
    }
}
