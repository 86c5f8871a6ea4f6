//! The doubled set `B = A' ∪ (A' + q_ε²)` with `q_ε = lcm{1..⌊ε⁻²⌋}`.
//!
//! Square differences inside `B` all cross between the two copies, and on
//! the transform side their count is
//! `2∫|Â'(α)|²(cos(2πq_ε²α) - 1)Ŝ(α)dα`. The factor `cos(2πq_ε²α) - 1`
//! vanishes at every `a/q` with `q <= ε⁻²`, which is what keeps the count
//! small. `q_ε²` is astronomically large for moderate `ε`, so every phase
//! involving it is reduced modulo 1 in exact integer arithmetic.

use crate::arcs::epsilon_denominator_cap;
use crate::fourier::{set_transform_grid, translation_modulation_residual, weyl_sum_grid};
use crate::numeric::{
    cis_neg, frac_big_times_f64, gcd, isqrt, one_minus_cos, primes_up_to, CompensatedSum,
};
use crate::report::EstimateReport;
use crate::rng::seeded;
use crate::sets::{
    count_square_differences_autocorr, count_square_differences_direct, is_square_difference_free,
    IndicatorSet,
};
use crate::{fourier, Error, Result};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Largest `m` accepted by [`lcm_up_to`].
pub const LCM_MAX: u64 = 10_000;

/// `lcm{1..m}` as the product of the largest prime powers `<= m`.
pub fn lcm_up_to(m: u64) -> Result<BigUint> {
    if m == 0 || m > LCM_MAX {
        return Err(Error::InvalidParameter(format!(
            "m must lie in 1..=10^4, got {m}"
        )));
    }
    let mut acc = BigUint::one();
    for p in primes_up_to(m) {
        let mut pk = p;
        while pk * p <= m {
            pk *= p;
        }
        acc *= pk;
    }
    Ok(acc)
}

/// `lcm{1..m}` folded one integer at a time, `l <- l·k/gcd(l, k)`.
pub fn lcm_up_to_fold(m: u64) -> BigUint {
    let mut acc = BigUint::one();
    for k in 2..=m {
        let k = BigUint::from(k);
        let g = num_integer::Integer::gcd(&acc, &k);
        acc = acc * k / g;
    }
    acc
}

/// Natural logarithm of a big integer from its top 64 bits.
pub fn big_ln(x: &BigUint) -> f64 {
    assert!(!x.is_zero());
    let bits = x.bits();
    if bits <= 64 {
        return x.to_f64().expect("fits").ln();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().expect("fits").ln() + shift as f64 * std::f64::consts::LN_2
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LcmBoundsRow {
    pub m: u64,
    /// `ln lcm{1..m}`, which is Chebyshev's `ψ(m)`.
    pub ln_lcm: f64,
    /// `lcm >= e^{m/2}`.
    pub holds_lower: bool,
    /// `lcm <= e^m`.
    pub holds_upper: bool,
}

/// Per-`m` status of `e^{m/2} <= lcm{1..m} <= e^m` for `m <= m_max`.
pub fn lcm_bounds_report(m_max: u64) -> Result<Vec<LcmBoundsRow>> {
    if m_max == 0 || m_max > LCM_MAX {
        return Err(Error::InvalidParameter(format!(
            "mMax must lie in 1..=10^4, got {m_max}"
        )));
    }
    let primes = primes_up_to(m_max);
    let mut psi = CompensatedSum::new();
    let mut rows = Vec::with_capacity(m_max as usize);
    for m in 1..=m_max {
        // ψ jumps by ln p exactly when m is a power of the prime p
        if let Some(&p) = primes.iter().find(|&&p| {
            let mut x = m;
            while x % p == 0 {
                x /= p;
            }
            x == 1 && m > 1
        }) {
            psi.add((p as f64).ln());
        }
        let ln_lcm = psi.value();
        rows.push(LcmBoundsRow {
            m,
            ln_lcm,
            holds_lower: ln_lcm >= m as f64 / 2.0,
            holds_upper: ln_lcm <= m as f64,
        });
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpsilonParams {
    pub epsilon: f64,
    /// `ε⁻²` as a real number.
    pub eps_inv_sq: f64,
    /// `⌊ε⁻²⌋`.
    pub m: u64,
    #[serde(with = "big_decimal")]
    pub q_eps: BigUint,
    /// `q_ε²`.
    #[serde(with = "big_decimal")]
    pub shift: BigUint,
}

mod big_decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        BigUint::parse_bytes(text.as_bytes(), 10)
            .ok_or_else(|| serde::de::Error::custom("bad decimal integer"))
    }
}

impl EpsilonParams {
    pub fn from_epsilon(epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "epsilon must be positive, got {epsilon}"
            )));
        }
        let m = epsilon_denominator_cap(epsilon);
        if m == 0 {
            return Err(Error::InvalidParameter(format!(
                "epsilon = {epsilon} gives floor(epsilon^-2) = 0"
            )));
        }
        let q_eps = lcm_up_to(m)?;
        let shift = &q_eps * &q_eps;
        Ok(Self {
            epsilon,
            eps_inv_sq: 1.0 / (epsilon * epsilon),
            m,
            q_eps,
            shift,
        })
    }

    /// `ε = C₁ (ln N)^{-1/2}` given `ln N` directly.
    pub fn from_log_n(ln_n: f64, c1: f64) -> Result<Self> {
        if c1.is_nan() || c1 <= 0.0 || ln_n.is_nan() || ln_n <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "need C1 > 0 and ln N > 0, got {c1}, {ln_n}"
            )));
        }
        Self::from_epsilon(c1 / ln_n.sqrt())
    }

    /// `ε = C₁ (ln N)^{-1/2}`.
    pub fn from_n(n: u64, c1: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!(
                "N must be at least 3, got {n}"
            )));
        }
        Self::from_log_n((n as f64).ln(), c1)
    }

    pub fn shift_u64(&self) -> Option<u64> {
        self.shift.to_u64()
    }

    /// `(2π q_ε² ε⁻² / N, ε)`; the construction needs the first at most the second.
    pub fn gate(&self, n: u64) -> (f64, f64) {
        let lhs =
            2.0 * PI * self.shift.to_f64().unwrap_or(f64::INFINITY) * self.eps_inv_sq / n as f64;
        (lhs, self.epsilon)
    }

    pub fn passes_gate(&self, n: u64) -> bool {
        let (lhs, rhs) = self.gate(n);
        lhs <= rhs
    }
}

/// `ε = C₁(ln N)^{-1/2}`.
pub fn epsilon_from_n(n: u64, c1: f64) -> Result<EpsilonParams> {
    EpsilonParams::from_n(n, c1)
}

/// The `C₁` giving the largest `⌊ε⁻²⌋` that still passes the gate, with
/// `ε⁻² = ⌊ε⁻²⌋` exactly.
pub fn admissible_c1(n: u64) -> Result<f64> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "N must be at least 3, got {n}"
        )));
    }
    let ln_n = (n as f64).ln();
    let mut best = None;
    for m in 1..=LCM_MAX {
        let c1 = (ln_n / m as f64).sqrt();
        let params = EpsilonParams::from_log_n(ln_n, c1)?;
        if !params.passes_gate(n) || params.shift_u64().is_none_or(|s| s > n) {
            break;
        }
        best = Some(c1);
    }
    best.ok_or_else(|| Error::Precondition(format!("no C1 passes the gate at N = {n}")))
}

/// `B = A' ∪ (A' + q_ε²)` and `A' = A ∩ {1..N - q_ε²}`, with `N` the
/// capacity of `A`.
pub fn build_b(a: &IndicatorSet, params: &EpsilonParams) -> Result<(IndicatorSet, IndicatorSet)> {
    let n = a.capacity();
    let shift = match params.shift_u64() {
        Some(s) if s <= n => s,
        _ => {
            return Err(Error::ShiftTooLarge {
                shift: params.shift.to_string(),
                capacity: n,
            })
        }
    };
    if !is_square_difference_free(a) {
        return Err(Error::Precondition("A has a square difference".into()));
    }
    let aprime = a.truncate(n - shift);
    let moved = aprime.shift(shift, n)?;
    if let Some(x) = aprime.intersection(&moved)?.members().next() {
        return Err(Error::NotDisjoint(x));
    }
    let b = aprime.union(&moved)?;
    debug_assert_eq!(b.len(), 2 * aprime.len());
    Ok((b, aprime))
}

/// `|B| >= (5/3)|A|`.
pub fn property_i_check(a: &IndicatorSet, b: &IndicatorSet, _aprime: &IndicatorSet) -> bool {
    3 * b.len() >= 5 * a.len()
}

/// `|A'| >= (5/6)|A|`.
pub fn aprime_ratio_holds(a: &IndicatorSet, aprime: &IndicatorSet) -> bool {
    6 * aprime.len() >= 5 * a.len()
}

/// Square differences in `B` against `20 ε N^{3/2}`.
pub fn property_ii_check(b: &IndicatorSet, n: u64, epsilon: f64) -> EstimateReport {
    let count = count_square_differences_direct(b).0 as f64;
    EstimateReport::new(None, count, 20.0 * epsilon * (n as f64).powf(1.5))
}

/// Per-grid-point values `cos(2πq_ε²j/R) - 1` with the phase reduced exactly.
fn cosine_factors(shift: &BigUint, r: usize) -> Vec<f64> {
    let base = (shift % BigUint::from(r)).to_u64().expect("below R");
    (0..r as u64)
        .into_par_iter()
        .map(|j| {
            let num = (base as u128 * j as u128 % r as u128) as u64;
            -one_minus_cos(num as f64 / r as f64)
        })
        .collect()
}

/// `star(α) = |cos(2πq_ε²α) - 1|·|Ŝ(α)|` at `α = j/R`, against `10ε√N`. The
/// report carries the maximum and the `α` where it occurs.
pub fn star_bound_sweep(params: &EpsilonParams, n: u64, grid: usize) -> Result<EstimateReport> {
    if grid < 1000 {
        return Err(Error::InvalidParameter(format!(
            "grid must have at least 1000 points, got {grid}"
        )));
    }
    let star = star_values(params, n, grid);
    let (j, max) =
        star.iter().copied().enumerate().fold(
            (0, 0.0f64),
            |acc, (j, v)| if v > acc.1 { (j, v) } else { acc },
        );
    Ok(EstimateReport::new(
        Some(j as f64 / grid as f64),
        max,
        10.0 * params.epsilon * (n as f64).sqrt(),
    ))
}

fn star_values(params: &EpsilonParams, n: u64, grid: usize) -> Vec<f64> {
    let cos = cosine_factors(&params.shift, grid);
    let s = weyl_sum_grid(n, grid);
    cos.iter()
        .zip(&s)
        .map(|(c, s)| c.abs() * s.norm())
        .collect()
}

/// The transform-side count of square differences in `B` and the
/// upper certificate built from `star`, on a grid large enough to be exact.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralCertificate {
    pub samples: usize,
    /// `2(1/R)Σ|Â'|²(cos - 1)Ŝ`, equal to the count.
    pub identity: f64,
    /// `2(1/R)Σ|Â'|²·star`, at least the count.
    pub certificate: f64,
}

/// Grid size for [`integral_certificate`]: a power of two above every
/// frequency of the integrand.
pub fn certificate_samples(n: u64, shift: u64) -> usize {
    ((3 * n + 1).max(2 * n + shift + 1) as usize).next_power_of_two()
}

pub fn integral_certificate(
    aprime: &IndicatorSet,
    params: &EpsilonParams,
    n: u64,
) -> Result<IntegralCertificate> {
    let shift = params.shift_u64().ok_or_else(|| Error::ShiftTooLarge {
        shift: params.shift.to_string(),
        capacity: n,
    })?;
    let r = certificate_samples(n, shift);
    let a_hat = set_transform_grid(aprime, r);
    let s = weyl_sum_grid(n, r);
    let cos = cosine_factors(&params.shift, r);
    let mut identity = CompensatedSum::new();
    let mut certificate = CompensatedSum::new();
    for j in 0..r {
        let energy = a_hat[j].norm_sqr();
        identity.add(energy * cos[j] * s[j].re);
        certificate.add(energy * cos[j].abs() * s[j].norm());
    }
    let scale = 2.0 / r as f64;
    Ok(IntegralCertificate {
        samples: r,
        identity: identity.value() * scale,
        certificate: certificate.value() * scale,
    })
}

/// `|cos(2π·Q·α) - 1| <= 2π·Q·|α - a/q|` for `q | Q`, phase reduced exactly.
pub fn mvt_cosine_check(q_eps_sq: &BigUint, a: i64, q: u64, alpha: f64) -> Result<bool> {
    if q == 0 || !(q_eps_sq % BigUint::from(q)).is_zero() {
        return Err(Error::Precondition(format!(
            "{q} does not divide the shift"
        )));
    }
    let lhs = one_minus_cos(frac_big_times_f64(q_eps_sq, alpha));
    let dist = (q as f64).mul_add(alpha, -(a as f64)).abs() / q as f64;
    let rhs = 2.0 * PI * q_eps_sq.to_f64().unwrap_or(f64::INFINITY) * dist;
    Ok(lhs <= rhs * (1.0 + 1e-12) + 1e-300)
}

/// Cosine factor at an exact rational `α = a/q` with `q | Q`: always zero.
pub fn cosine_vanishes_at(q_eps_sq: &BigUint, a: u64, q: u64) -> bool {
    assert!(q >= 1);
    let g = gcd(a, q).max(1);
    let (a, q) = (a / g, q / g);
    (q_eps_sq * BigUint::from(a) % BigUint::from(q)).is_zero()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Gate {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstructionReport {
    pub n: u64,
    pub c1: f64,
    pub params: EpsilonParams,
    pub gate: Gate,
    /// Where `A` came from (`cache`, `greedy` or `file`).
    pub a_source: String,
    pub size_a: u64,
    pub size_aprime: u64,
    pub size_b: u64,
    pub square_pairs_b: u64,
    pub counts_agree: bool,
    /// `|B| >= (5/3)|A|`.
    pub property_i: bool,
    /// `q_ε² <= (√N - 1)/6`, the condition under which property (i) is
    /// guaranteed.
    pub property_i_condition: bool,
    pub property_ii: EstimateReport,
    pub star: EstimateReport,
    pub integral: IntegralCertificate,
    pub translation_residual_max: f64,
}

impl ConstructionReport {
    /// Every check that must hold whenever the gate holds.
    pub fn hard_checks(&self) -> Vec<(&'static str, bool)> {
        vec![
            ("gate", self.gate.holds),
            ("disjoint union", self.size_b == 2 * self.size_aprime),
            ("three counts agree", self.counts_agree),
            (
                "property (i) under its condition",
                !self.property_i_condition || self.property_i,
            ),
            ("property (ii)", self.property_ii.satisfied),
            ("star bound", self.star.satisfied),
            (
                "integral identity",
                (self.integral.identity - self.square_pairs_b as f64).abs() <= 1e-6 * self.n as f64,
            ),
            (
                "integral certificate",
                self.integral.certificate + 1e-6 * self.n as f64 >= self.square_pairs_b as f64,
            ),
            (
                "translation-modulation",
                self.translation_residual_max <= 1e-7,
            ),
        ]
    }
}

/// Full pipeline for a given `A` over `{1..N}`.
pub fn run_construction(
    a: &IndicatorSet,
    a_source: &str,
    c1: Option<f64>,
    grid: usize,
    seed: u64,
) -> Result<ConstructionReport> {
    let n = a.capacity();
    let c1 = match c1 {
        Some(c) => c,
        None => admissible_c1(n)?,
    };
    let params = EpsilonParams::from_n(n, c1)?;
    let (lhs, rhs) = params.gate(n);
    if lhs > rhs {
        return Err(Error::Precondition(format!(
            "2*pi*q_eps^2*eps^-2/N = {lhs:.6e} exceeds eps = {rhs:.6} (N = {n}, C1 = {c1}, q_eps = {})",
            params.q_eps
        )));
    }
    let (b, aprime) = build_b(a, &params)?;
    let shift = params.shift_u64().expect("checked by build_b");
    let direct = count_square_differences_direct(&b).0;
    let autocorr = count_square_differences_autocorr(&b)?.0;
    let integral = integral_certificate(&aprime, &params, n)?;
    let via_integral = fourier::count_via_integral(&b, fourier::default_samples(n))?;
    let counts_agree =
        direct == autocorr && (via_integral - direct as f64).abs() <= 1e-6 * n as f64;
    let mut rng = seeded(seed);
    let alphas: Vec<f64> = (0..100).map(|_| rng.gen::<f64>()).collect();
    let translation_residual_max = alphas
        .par_iter()
        .map(|&alpha| translation_modulation_residual(&aprime, shift, alpha))
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    Ok(ConstructionReport {
        n,
        c1,
        gate: Gate {
            lhs,
            rhs,
            holds: true,
        },
        a_source: a_source.to_string(),
        size_a: a.len(),
        size_aprime: aprime.len(),
        size_b: b.len(),
        square_pairs_b: direct,
        counts_agree,
        property_i: property_i_check(a, &b, &aprime),
        property_i_condition: (shift as f64) <= ((n as f64).sqrt() - 1.0) / 6.0,
        property_ii: property_ii_check(&b, n, params.epsilon),
        star: star_bound_sweep(&params, n, grid)?,
        integral,
        translation_residual_max,
        params,
    })
}

/// `|Ŝ(α)|` never exceeds `⌊√N⌋`; the cosine factor never exceeds 2. So the
/// star bound is automatic once `10ε√N >= 2⌊√N⌋`.
pub fn star_bound_is_automatic(epsilon: f64, n: u64) -> bool {
    10.0 * epsilon * (n as f64).sqrt() >= 2.0 * isqrt(n) as f64
}

/// `e^{-2πi q_ε² α}` for real `α`, for callers needing the modulation factor.
pub fn modulation(shift: &BigUint, alpha: f64) -> num_complex::Complex64 {
    cis_neg(frac_big_times_f64(shift, alpha))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::greedy_square;

    #[test]
    fn lcm_examples() {
        assert_eq!(lcm_up_to(1).unwrap(), BigUint::one());
        assert_eq!(lcm_up_to(10).unwrap(), BigUint::from(2520u32));
        assert_eq!(lcm_up_to(13).unwrap(), BigUint::from(360_360u32));
        for m in 1..=100 {
            assert_eq!(lcm_up_to(m).unwrap(), lcm_up_to_fold(m), "m={m}");
        }
        assert!(lcm_up_to(10_001).is_err());
        assert!(lcm_up_to(0).is_err());
    }

    #[test]
    fn lcm_bounds_examples() {
        let rows = lcm_bounds_report(200).unwrap();
        let row = |m: u64| &rows[m as usize - 1];
        assert!(row(5).holds_lower && row(5).holds_upper);
        assert!((row(5).ln_lcm - 60f64.ln()).abs() < 1e-12);
        assert!(!row(2).holds_lower);
        assert!(!row(1).holds_lower);
        assert!(!row(113).holds_upper);
        for r in &rows {
            let exact = big_ln(&lcm_up_to(r.m).unwrap());
            assert!((exact - r.ln_lcm).abs() < 1e-9 * r.m as f64, "m={}", r.m);
        }
    }

    #[test]
    fn epsilon_examples() {
        let p = EpsilonParams::from_log_n(100.0, 1.0).unwrap();
        assert!((p.epsilon - 0.1).abs() < 1e-15);
        assert_eq!(p.m, 100);
        let p = EpsilonParams::from_log_n(4.0, 2.0).unwrap();
        assert_eq!(
            (p.m, p.q_eps.clone(), p.shift.clone()),
            (1, BigUint::one(), BigUint::one())
        );
        let p = epsilon_from_n(1_000_000, 1.0).unwrap();
        assert_eq!((p.m, p.q_eps.clone()), (13, BigUint::from(360_360u32)));
        assert!(epsilon_from_n(2, 1.0).is_err());
        assert!(EpsilonParams::from_epsilon(0.001).is_err());
    }

    #[test]
    fn admissible_at_one_million() {
        let c1 = admissible_c1(1_000_000).unwrap();
        let p = epsilon_from_n(1_000_000, c1).unwrap();
        assert_eq!((p.m, p.q_eps.to_u64()), (6, Some(60)));
        assert!(p.passes_gate(1_000_000));
    }

    fn params_with_shift(q: u64) -> EpsilonParams {
        let q_eps = BigUint::from(q);
        EpsilonParams {
            epsilon: 0.5,
            eps_inv_sq: 4.0,
            m: 4,
            shift: &q_eps * &q_eps,
            q_eps,
        }
    }

    #[test]
    fn build_examples() {
        let a = IndicatorSet::from_members(10, [1]).unwrap();
        let (b, ap) = build_b(&a, &params_with_shift(2)).unwrap();
        assert_eq!(b.members().collect::<Vec<_>>(), vec![1, 5]);
        assert_eq!(ap, a);
        let a = greedy_square(200).unwrap();
        let (b, ap) = build_b(&a, &params_with_shift(2)).unwrap();
        assert_eq!(b.len(), 2 * ap.len());
        assert!(ap.is_subset(&a));
        assert!(matches!(
            build_b(&a, &params_with_shift(15)),
            Err(Error::ShiftTooLarge { .. })
        ));
        let bad = IndicatorSet::from_members(10, [1, 2]).unwrap();
        assert!(build_b(&bad, &params_with_shift(2)).is_err());
    }

    #[test]
    fn property_i_boundary() {
        let a = IndicatorSet::from_members(20, 1..=6).unwrap();
        let b5 = IndicatorSet::from_members(20, 1..=10).unwrap();
        let b4 = IndicatorSet::from_members(20, 1..=8).unwrap();
        assert!(property_i_check(&a, &b5, &a));
        assert!(!property_i_check(&a, &b4, &a));
    }

    #[test]
    fn crossing_pairs_only() {
        let a = greedy_square(2000).unwrap();
        let p = params_with_shift(6);
        let (b, ap) = build_b(&a, &p).unwrap();
        let count = count_square_differences_direct(&b).0;
        assert!(count <= ap.len() * isqrt(2000));
        let cert = integral_certificate(&ap, &p, 2000).unwrap();
        assert!((cert.identity - count as f64).abs() < 1e-6);
        assert!(cert.certificate + 1e-6 >= count as f64);
        assert!(property_ii_check(&b, 2000, 0.5).satisfied);
    }

    #[test]
    fn star_sweep_examples() {
        let p = params_with_shift(12);
        let r = star_bound_sweep(&p, 10_000, 4096).unwrap();
        assert!(r.measured <= 2.0 * 100.0);
        assert!(star_bound_sweep(&p, 10_000, 999).is_err());
        assert!(cosine_factors(&p.shift, 4096)[0] == 0.0);
        assert!(cosine_vanishes_at(&p.shift, 5, 12));
    }

    #[test]
    fn mvt_examples() {
        let q = BigUint::from(36u32);
        assert!(mvt_cosine_check(&q, 1, 3, 1.0 / 3.0 + 1e-7).unwrap());
        assert!(mvt_cosine_check(&q, 1, 2, 0.5).unwrap());
        assert!(mvt_cosine_check(&q, 1, 5, 0.2).is_err());
        let big = lcm_up_to(200).unwrap().pow(2);
        assert!(mvt_cosine_check(&big, 7, 199, 7.0 / 199.0 + 1e-30).unwrap());
    }
}
