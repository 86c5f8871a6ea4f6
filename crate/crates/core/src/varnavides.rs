//! Square-gap progressions `P_{a,r} = {a + jr² : 1 <= j <= M}` and the
//! averaging argument turning one forced square difference per progression
//! into many square differences in `B`.
//!
//! `R = ⌊√N/M⌋`, `1 <= r <= R` and `1 <= a <= N - MR²`. A progression is
//! good when it meets `B` in more than `D(M)` elements. `P_{a,r}` is the image
//! of `{1..M}` under `j ↦ a + jr²`, which multiplies differences by `r²`, so a
//! good progression holds a pair of `B` at distance `(nr)²`.

use crate::numeric::isqrt;
use crate::report::EstimateReport;
use crate::sets::{count_square_differences_direct, is_square_difference_free, IndicatorSet};
use crate::{Error, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Progression {
    pub a: u64,
    pub r: u64,
    pub m: u64,
}

impl Progression {
    pub fn elements(&self) -> impl Iterator<Item = u64> + '_ {
        (1..=self.m).map(move |j| self.a + j * self.r * self.r)
    }

    pub fn hits(&self, b: &IndicatorSet) -> u64 {
        self.elements().filter(|&x| b.contains(x)).count() as u64
    }

    pub fn contains(&self, x: u64) -> bool {
        let step = self.r * self.r;
        x > self.a && (x - self.a).is_multiple_of(step) && (x - self.a) / step <= self.m
    }
}

/// `⌊√N / M⌋`, exactly.
pub fn progression_radius(n: u64, m: u64) -> u64 {
    // ⌊√N/M⌋ = ⌊⌊√N⌋/M⌋
    isqrt(n) / m
}

fn check(n: u64, m: u64) -> Result<u64> {
    if m == 0 || m > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= M <= N, got M = {m}, N = {n}"
        )));
    }
    let r = progression_radius(n, m);
    if r == 0 {
        return Err(Error::InvalidParameter(format!(
            "floor(sqrt(N)/M) = 0 for N = {n}, M = {m}"
        )));
    }
    Ok(r)
}

/// Every `P_{a,r}`, ordered by `r` then `a`.
pub fn enumerate_progressions(n: u64, m: u64) -> Result<impl Iterator<Item = Progression>> {
    let big_r = check(n, m)?;
    let a_max = n - m * big_r * big_r;
    Ok((1..=big_r).flat_map(move |r| (1..=a_max).map(move |a| Progression { a, r, m })))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GoodnessTally {
    pub total: u64,
    pub good: u64,
    /// `(|B|/N - (D(M)+2)/M)·R·N`.
    pub rhs: f64,
    /// `Σ_{a,r} |B ∩ P_{a,r}|`.
    pub incidences: u64,
}

/// Good-progression tally, partitioned by `r`.
pub fn count_good(b: &IndicatorSet, m: u64, d_m: u64) -> Result<GoodnessTally> {
    let n = b.capacity();
    let big_r = check(n, m)?;
    let a_max = n - m * big_r * big_r;
    let (total, good, incidences) = (1..=big_r)
        .into_par_iter()
        .map(|r| {
            let mut good = 0u64;
            let mut inc = 0u64;
            for a in 1..=a_max {
                let hits = Progression { a, r, m }.hits(b);
                inc += hits;
                if hits > d_m {
                    good += 1;
                }
            }
            (a_max, good, inc)
        })
        .reduce(|| (0, 0, 0), |x, y| (x.0 + y.0, x.1 + y.1, x.2 + y.2));
    let nf = n as f64;
    let rhs = (b.len() as f64 / nf - (d_m as f64 + 2.0) / m as f64) * big_r as f64 * nf;
    Ok(GoodnessTally {
        total,
        good,
        rhs,
        incidences,
    })
}

/// Number of progressions containing both `x < y`, from the structure:
/// `y - x = kr²` with `1 <= k <= M - 1`, then `a = x - ir²` for each `i`
/// with `i` and `i + k` in `1..=M`.
fn containing(x: u64, y: u64, m: u64, big_r: u64, a_max: u64) -> u64 {
    let d = y - x;
    let mut count = 0;
    for r in 1..=big_r {
        let step = r * r;
        if !d.is_multiple_of(step) {
            continue;
        }
        let k = d / step;
        if k >= m {
            continue;
        }
        for i in 1..=m - k {
            if x > i * step && x - i * step <= a_max {
                count += 1;
            }
        }
    }
    count
}

/// Largest number of progressions containing any one square-difference pair
/// of `B`.
pub fn overcount_per_pair(b: &IndicatorSet, m: u64) -> Result<u64> {
    let n = b.capacity();
    let big_r = check(n, m)?;
    let a_max = n - m * big_r * big_r;
    let members: Vec<u64> = b.members().collect();
    Ok(members
        .par_iter()
        .map(|&x| {
            let mut best = 0;
            let mut s = 1u64;
            while x + s * s <= n {
                let y = x + s * s;
                if b.contains(y) {
                    best = best.max(containing(x, y, m, big_r, a_max));
                }
                s += 1;
            }
            best
        })
        .max()
        .unwrap_or(0))
}

/// Same as [`overcount_per_pair`], by scanning every progression.
pub fn overcount_per_pair_brute(b: &IndicatorSet, m: u64) -> Result<u64> {
    let n = b.capacity();
    let mut counts = std::collections::HashMap::<(u64, u64), u64>::new();
    for p in enumerate_progressions(n, m)? {
        let hit: Vec<u64> = p.elements().filter(|&x| b.contains(x)).collect();
        for i in 0..hit.len() {
            for &y in &hit[i + 1..] {
                *counts.entry((hit[i], y)).or_default() += 1;
            }
        }
    }
    Ok(counts.into_values().max().unwrap_or(0))
}

/// Square differences in `B`, which must be at least
/// `((|B|/N - (D(M)+2)/M)/M^{5/2})·N^{3/2}`.
pub fn lemma_v_check(b: &IndicatorSet, m: u64, d_m: u64) -> Result<EstimateReport> {
    let n = b.capacity();
    check(n, m)?;
    let nf = n as f64;
    let mf = m as f64;
    let bound = (b.len() as f64 / nf - (d_m as f64 + 2.0) / mf) / mf.powf(2.5) * nf.powf(1.5);
    let count = count_square_differences_direct(b).0 as f64;
    Ok(EstimateReport::at_least(None, count, bound))
}

/// The three quantities in the lower-bound chain for `Σ|B ∩ P_{a,r}|`, with
/// the middle term both as displayed (`{Mr²..N - Mr²}`) and with the window
/// each `r` actually covers (`[Mr² + 1, N - MR² + r²]`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainAudit {
    pub incidences: u64,
    pub middle_literal: u64,
    pub middle_covered: u64,
    pub lower: f64,
    /// `good·M + (total - good)·D(M)`.
    pub upper: u64,
    pub good: u64,
    pub rhs: f64,
}

impl ChainAudit {
    /// The inequalities that hold for every input.
    pub fn holds(&self) -> bool {
        self.incidences >= self.middle_covered
            && self.middle_covered as f64 >= self.lower
            && self.incidences <= self.upper
            && self.good as f64 >= self.rhs
    }

    /// The displayed first inequality, which can fail.
    pub fn literal_holds(&self) -> bool {
        self.incidences >= self.middle_literal
    }
}

pub fn chain_audit(b: &IndicatorSet, m: u64, d_m: u64) -> Result<ChainAudit> {
    let n = b.capacity();
    let big_r = check(n, m)?;
    let tally = count_good(b, m, d_m)?;
    let prefix: Vec<u64> = {
        let mut p = vec![0u64; n as usize + 1];
        for x in 1..=n {
            p[x as usize] = p[x as usize - 1] + b.contains(x) as u64;
        }
        p
    };
    let window = |lo: u64, hi: u64| {
        if lo > hi || lo > n {
            0
        } else {
            prefix[hi.min(n) as usize] - prefix[lo.max(1) as usize - 1]
        }
    };
    let mut literal = 0u64;
    let mut covered = 0u64;
    for r in 1..=big_r {
        let mr2 = m * r * r;
        literal += if mr2 <= n { window(mr2, n - mr2) } else { 0 };
        covered += window(mr2 + 1, n - m * big_r * big_r + r * r);
    }
    let lower = (m * big_r) as f64 * (b.len() as f64 - 2.0 * (m * big_r * big_r) as f64);
    Ok(ChainAudit {
        incidences: tally.incidences,
        middle_literal: m * literal,
        middle_covered: m * covered,
        lower,
        upper: tally.good * m + (tally.total - tally.good) * d_m,
        good: tally.good,
        rhs: tally.rhs,
    })
}

/// Whether every good progression holds a square-difference pair of `B`.
pub fn good_progressions_contain_pairs(b: &IndicatorSet, m: u64, d_m: u64) -> Result<bool> {
    let n = b.capacity();
    for p in enumerate_progressions(n, m)? {
        let hit: Vec<u64> = p.elements().filter(|&x| b.contains(x)).collect();
        if hit.len() as u64 > d_m {
            let sub = IndicatorSet::from_members(n, hit)?;
            if is_square_difference_free(&sub) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{random_set, seeded};
    use crate::solver::brute_force_d;

    #[test]
    fn enumeration_examples() {
        let ps: Vec<_> = enumerate_progressions(16, 2).unwrap().collect();
        assert_eq!(ps.len(), 16);
        assert!(ps
            .iter()
            .all(|p| (1..=2).contains(&p.r) && (1..=8).contains(&p.a)));
        assert!(ps.iter().all(|p| p.elements().max().unwrap() <= 16));
        let ps: Vec<_> = enumerate_progressions(25, 5).unwrap().collect();
        assert_eq!(ps.len(), 20);
        assert!(ps.iter().all(|p| p.r == 1));
        assert!(enumerate_progressions(15, 4).is_err());
    }

    #[test]
    fn tally_examples() {
        let empty = IndicatorSet::empty(100).unwrap();
        let t = count_good(&empty, 4, 2).unwrap();
        assert_eq!(t.good, 0);
        assert!(t.rhs < 0.0);
        let full = IndicatorSet::full(100).unwrap();
        let d4 = brute_force_d(4).unwrap().value;
        let t = count_good(&full, 4, d4).unwrap();
        assert_eq!(t.good, t.total);
        let b = random_set(&mut seeded(3), 400, 0.5);
        let t = count_good(&b, 4, d4).unwrap();
        assert!(t.good as f64 >= t.rhs);
    }

    #[test]
    fn overcount_matches_brute_force() {
        let b = IndicatorSet::from_members(16, [1, 2]).unwrap();
        let c = overcount_per_pair(&b, 2).unwrap();
        assert_eq!(c, overcount_per_pair_brute(&b, 2).unwrap());
        assert!((c as f64) <= 2f64.powf(1.5));
        let mut rng = seeded(11);
        for m in 2..=4 {
            for n in [50u64, 120, 300] {
                let b = random_set(&mut rng, n, 0.4);
                assert_eq!(
                    overcount_per_pair(&b, m).unwrap(),
                    overcount_per_pair_brute(&b, m).unwrap(),
                    "N={n} M={m}"
                );
            }
        }
    }

    #[test]
    fn lemma_examples() {
        let full = IndicatorSet::full(10_000).unwrap();
        let r = lemma_v_check(&full, 4, 2).unwrap();
        assert!(r.bound == 0.0 && r.satisfied);
        let r = lemma_v_check(&full, 10, brute_force_d(10).unwrap().value).unwrap();
        assert!(r.bound > 0.0 && r.satisfied);
        let sparse = IndicatorSet::from_members(100, [3, 50]).unwrap();
        let r = lemma_v_check(&sparse, 4, 2).unwrap();
        assert!(r.bound <= 0.0 && r.satisfied);
        let r = lemma_v_check(&IndicatorSet::from_members(100, [3, 7]).unwrap(), 2, 1).unwrap();
        assert_eq!(r.measured, 1.0);
    }

    #[test]
    fn displayed_middle_term_can_fail() {
        let b = IndicatorSet::from_members(16, [14]).unwrap();
        let audit = chain_audit(&b, 2, 1).unwrap();
        assert_eq!((audit.incidences, audit.middle_literal), (1, 2));
        assert!(!audit.literal_holds());
        assert!(audit.holds());
    }

    #[test]
    fn good_progressions_have_pairs() {
        let b = random_set(&mut seeded(5), 300, 0.6);
        assert!(good_progressions_contain_pairs(&b, 3, brute_force_d(3).unwrap().value).unwrap());
    }
}
