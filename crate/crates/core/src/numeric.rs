//! Integer helpers, exact phase reduction and compensated accumulation.
//!
//! Exponential sums in this crate evaluate `e^{-2πi t}` for phases `t = α·k`
//! where `k` can reach `10^12` (squares up to `N`) or be a many-hundred-digit
//! integer (`q^2` with `q = lcm{1..m}`). A plain `f64` product loses the
//! fractional part long before that, so phases are always reduced modulo 1
//! first, either with an error-free product or in exact integer arithmetic.

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use std::f64::consts::PI;

/// Largest `r` with `r * r <= n`.
pub fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

pub fn is_square(n: u64) -> bool {
    let r = isqrt(n);
    r * r == n
}

/// Largest `r >= 0` with `r^k <= n`.
pub fn iroot(n: u64, k: u32) -> u64 {
    assert!(k >= 1);
    if k == 1 || n <= 1 {
        return n;
    }
    let mut r = (n as f64).powf(1.0 / k as f64) as u64;
    let fits = |r: u64| (r as u128).checked_pow(k).is_some_and(|p| p <= n as u128);
    while r > 0 && !fits(r) {
        r -= 1;
    }
    while fits(r + 1) {
        r += 1;
    }
    r
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Fractional part of `alpha * k`, computed from the exact product of the two
/// doubles. Exact to one rounding for `k < 2^53`.
pub fn frac_product(alpha: f64, k: u64) -> f64 {
    debug_assert!(k < (1u64 << 53));
    let kf = k as f64;
    let p = alpha * kf;
    let e = alpha.mul_add(kf, -p);
    let r = (p - p.floor()) + e;
    r - r.floor()
}

/// Fractional part of `big * alpha`, reduced exactly using the binary
/// expansion of `alpha`.
pub fn frac_big_times_f64(big: &BigUint, alpha: f64) -> f64 {
    if alpha == 0.0 || big.is_zero() {
        return 0.0;
    }
    let (mantissa, exponent, sign) = num_traits::float::FloatCore::integer_decode(alpha);
    if exponent >= 0 {
        return 0.0;
    }
    let shift = (-exponent) as u64;
    let modulus = BigUint::from(1u8) << shift;
    let residue = (big * BigUint::from(mantissa)) % &modulus;
    // residue / 2^shift, keeping the top 64 bits for the conversion
    let frac = if shift > 64 {
        let top = (&residue >> (shift - 64)).to_f64().unwrap_or(0.0);
        top / 2f64.powi(64)
    } else {
        residue.to_f64().unwrap_or(0.0) / 2f64.powi(shift as i32)
    };
    let frac = if sign < 0 { 1.0 - frac } else { frac };
    frac - frac.floor()
}

/// `e^{-2πi t}`, with `t` first folded into `[-1/2, 1/2]`.
pub fn cis_neg(t: f64) -> Complex64 {
    let t = t - t.round();
    let (s, c) = (2.0 * PI * t).sin_cos();
    Complex64::new(c, -s)
}

/// `e^{-2πi num/den}` for an exact rational phase.
pub fn cis_neg_ratio(num: u64, den: u64) -> Complex64 {
    let r = num % den;
    cis_neg(r as f64 / den as f64)
}

/// `|cos(2π t) - 1|`, evaluated as `2 sin^2(π t)` to keep precision near 0.
pub fn one_minus_cos(t: f64) -> f64 {
    let t = t - t.round();
    let s = (PI * t).sin();
    2.0 * s * s
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Self::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Compensated sum over complex terms (independent real/imaginary parts).
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexSum {
    re: CompensatedSum,
    im: CompensatedSum,
}

impl ComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

impl FromIterator<Complex64> for ComplexSum {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        let mut acc = Self::new();
        for z in iter {
            acc.add(z);
        }
        acc
    }
}

/// Primes up to and including `n`.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isqrt_boundaries() {
        for n in 0..2000u64 {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n);
        }
        assert_eq!(isqrt(u64::MAX), 4294967295);
        assert_eq!(isqrt(1_000_000_000_000), 1_000_000);
    }

    #[test]
    fn iroot_matches_powers() {
        assert_eq!(iroot(1 << 40, 20), 4);
        assert_eq!(iroot((1 << 40) - 1, 20), 3);
        assert_eq!(iroot(1_000_000, 20), 1);
        assert_eq!(iroot(1_048_576, 20), 2);
        assert_eq!(iroot(1_048_575, 20), 1);
    }

    #[test]
    fn frac_product_keeps_small_fraction() {
        // 0.1 is not exact; the error-free product sees the representation error.
        let alpha = 0.1f64;
        let k = 1_000_000_000_000u64;
        let exact = frac_big_times_f64(&BigUint::from(k), alpha);
        assert!((frac_product(alpha, k) - exact).abs() < 1e-15);
    }

    #[test]
    fn frac_big_matches_small_product() {
        for &(alpha, k) in &[(0.375f64, 7u64), (0.123456789, 1234567), (0.999, 3)] {
            let a = frac_big_times_f64(&BigUint::from(k), alpha);
            let b = frac_product(alpha, k);
            assert!((a - b).abs() < 1e-14, "{alpha} {k}: {a} vs {b}");
        }
    }

    #[test]
    fn compensated_sum_recovers_cancellation() {
        let acc: CompensatedSum = [1e16, 1.0, -1e16, 1.0].into_iter().collect();
        assert_eq!(acc.value(), 2.0);
    }

    #[test]
    fn one_minus_cos_near_integer() {
        assert_eq!(one_minus_cos(1.0), 0.0);
        assert!((one_minus_cos(0.5) - 2.0).abs() < 1e-15);
    }
}
