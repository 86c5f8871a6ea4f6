//! Transform side: the Weyl sum over squares, transforms of sets, and the
//! identities that tie them back to physical-side counts.
//!
//! Conventions: `Ŝ(α) = Σ_{n=1}^{⌊√N⌋} e^{-2πi n²α}` and
//! `B̂(α) = Σ_{x∈B} e^{-2πi xα}`. Pointwise evaluations reduce every phase
//! modulo 1 before the trigonometric call and accumulate with compensation.
//! Whole grids `α = j/R` go through an FFT of length `R`, which computes the
//! same sums without aliasing as long as every frequency is below `R`.

use crate::numeric::{cis_neg, cis_neg_ratio, frac_product, isqrt, CompensatedSum, ComplexSum};
use crate::sets::IndicatorSet;
use crate::{Error, Result};
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSample {
    pub alpha: f64,
    pub value: Complex64,
    pub n: u64,
}

/// `Ŝ(α)` for real `α`.
pub fn weyl_sum(n: u64, alpha: f64) -> Complex64 {
    (1..=isqrt(n))
        .map(|k| cis_neg(frac_product(alpha, k * k)))
        .collect::<ComplexSum>()
        .value()
}

/// `Ŝ(j/R)`, with each phase `n² j mod R` reduced exactly.
pub fn weyl_sum_rational(n: u64, j: u64, r: u64) -> Complex64 {
    let j = j % r;
    (1..=isqrt(n))
        .map(|k| {
            let num = ((k as u128 * k as u128 % r as u128) * j as u128 % r as u128) as u64;
            cis_neg_ratio(num, r)
        })
        .collect::<ComplexSum>()
        .value()
}

/// `B̂(α)`.
pub fn set_transform(set: &IndicatorSet, alpha: f64) -> Complex64 {
    set.members()
        .map(|x| cis_neg(frac_product(alpha, x)))
        .collect::<ComplexSum>()
        .value()
}

/// Forward DFT of length `r` of a sparse 0/1 signal given by its support.
fn dft_of_support(support: impl Iterator<Item = u64>, r: usize) -> Vec<Complex64> {
    let mut buf = vec![Complex64::new(0.0, 0.0); r];
    for x in support {
        buf[(x % r as u64) as usize] += 1.0;
    }
    let mut planner = FftPlanner::<f64>::new();
    planner.plan_fft_forward(r).process(&mut buf);
    buf
}

/// `B̂(j/R)` for `j = 0..R`.
pub fn set_transform_grid(set: &IndicatorSet, r: usize) -> Vec<Complex64> {
    dft_of_support(set.members(), r)
}

/// `Ŝ(j/R)` for `j = 0..R`.
pub fn weyl_sum_grid(n: u64, r: usize) -> Vec<Complex64> {
    dft_of_support((1..=isqrt(n)).map(|k| k * k), r)
}

/// `Ŝ(j/grid)` samples, evaluated pointwise with exact phases.
pub fn spectrum(n: u64, grid: u64) -> Vec<SpectrumSample> {
    (0..grid)
        .into_par_iter()
        .map(|j| SpectrumSample {
            alpha: j as f64 / grid as f64,
            value: weyl_sum_rational(n, j, grid),
            n,
        })
        .collect()
}

/// `B̂(j/grid)` samples, evaluated pointwise.
pub fn set_spectrum(set: &IndicatorSet, grid: u64) -> Vec<SpectrumSample> {
    (0..grid)
        .into_par_iter()
        .map(|j| {
            let value = set
                .members()
                .map(|x| cis_neg_ratio((x as u128 * j as u128 % grid as u128) as u64, grid))
                .collect::<ComplexSum>()
                .value();
            SpectrumSample {
                alpha: j as f64 / grid as f64,
                value,
                n: set.capacity(),
            }
        })
        .collect()
}

/// Default grid size for the counting identity.
pub fn default_samples(n: u64) -> usize {
    4 * n as usize
}

/// `(1/R) Σ_j |B̂(j/R)|² Ŝ(j/R)`, the transform-side square-difference count.
///
/// The integrand is a trigonometric polynomial with frequencies in
/// `[-2N+1, N-1]`, so any `R >= 3N + 1` reproduces the integral over `[0,1]`.
pub fn count_via_integral(set: &IndicatorSet, samples: usize) -> Result<f64> {
    let n = set.capacity();
    let required = 3 * n as usize + 1;
    if samples < required {
        return Err(Error::Undersampled { samples, required });
    }
    if set.is_empty() {
        return Ok(0.0);
    }
    let b = set_transform_grid(set, samples);
    let s = weyl_sum_grid(n, samples);
    let total: CompensatedSum = b
        .iter()
        .zip(&s)
        .map(|(bj, sj)| bj.norm_sqr() * sj.re)
        .collect();
    Ok(total.value() / samples as f64)
}

/// `|(1/R) Σ_j |B̂(j/R)|² - |B||`; zero up to rounding when `R >= 2N + 1`.
pub fn plancherel_residual(set: &IndicatorSet, samples: usize) -> Result<f64> {
    let required = 2 * set.capacity() as usize + 1;
    if samples < required {
        return Err(Error::Undersampled { samples, required });
    }
    if set.is_empty() {
        return Ok(0.0);
    }
    let b = set_transform_grid(set, samples);
    let energy: CompensatedSum = b.iter().map(|z| z.norm_sqr()).collect();
    Ok((energy.value() / samples as f64 - set.len() as f64).abs())
}

/// `A' ∪ (A' + shift)` over capacity `|A'| capacity + shift`; errors if the
/// two copies meet.
pub fn doubled_set(aprime: &IndicatorSet, shift: u64) -> Result<IndicatorSet> {
    let cap = aprime.capacity() + shift;
    let base = aprime.with_capacity(cap)?;
    let moved = aprime.shift(shift, cap)?;
    let overlap = base.intersection(&moved)?;
    if let Some(x) = overlap.members().next() {
        return Err(Error::NotDisjoint(x));
    }
    base.union(&moved)
}

/// `|B̂(α) - Â'(α)(1 + e^{-2πi·shift·α})|` with `B = A' ∪ (A' + shift)`.
pub fn translation_modulation_residual(
    aprime: &IndicatorSet,
    shift: u64,
    alpha: f64,
) -> Result<f64> {
    let b = doubled_set(aprime, shift)?;
    let lhs = set_transform(&b, alpha);
    let rhs = set_transform(aprime, alpha)
        * (Complex64::new(1.0, 0.0) + cis_neg(frac_product(alpha, shift)));
    Ok((lhs - rhs).norm())
}
