//! Upper bounds on `D(N)` from square shift systems.
//!
//! If `0 < s₁ < … < s_k` are squares whose pairwise differences are also
//! squares, then `x, x + s₁, …, x + s_k` are pairwise at square distance, so a
//! square-difference-free set meets each such `(k+1)`-tuple at most once.
//! Averaging over `x` gives `|A| <= (N + Σ sᵢ)/(k + 1)`.

use crate::numeric::{is_square, isqrt};
use crate::{Error, Result};
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// Shift systems `{1}`, `{9, 25}` and `{153², 185², 697²}`.
pub const KNOWN_CERTIFICATES: [&[u64]; 3] = [&[1], &[9, 25], &[23409, 34225, 485809]];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct CliqueCertificate {
    shifts: Vec<u64>,
}

impl TryFrom<Vec<u64>> for CliqueCertificate {
    type Error = Error;

    fn try_from(shifts: Vec<u64>) -> Result<Self> {
        Self::new(shifts)
    }
}

impl From<CliqueCertificate> for Vec<u64> {
    fn from(c: CliqueCertificate) -> Self {
        c.shifts
    }
}

impl CliqueCertificate {
    /// Validates the shifts: increasing squares with square differences.
    pub fn new(mut shifts: Vec<u64>) -> Result<Self> {
        if shifts.is_empty() {
            return Err(Error::InvalidCertificate("no shifts".into()));
        }
        shifts.sort_unstable();
        for (i, &s) in shifts.iter().enumerate() {
            if s == 0 || !is_square(s) {
                return Err(Error::InvalidCertificate(format!(
                    "{s} is not a positive square"
                )));
            }
            for &t in &shifts[i + 1..] {
                if t == s {
                    return Err(Error::InvalidCertificate(format!("{s} repeated")));
                }
                if !is_square(t - s) {
                    return Err(Error::InvalidCertificate(format!(
                        "{t} - {s} = {} is not a square",
                        t - s
                    )));
                }
            }
        }
        Ok(Self { shifts })
    }

    pub fn shifts(&self) -> &[u64] {
        &self.shifts
    }

    pub fn k(&self) -> usize {
        self.shifts.len()
    }

    pub fn shift_sum(&self) -> u64 {
        self.shifts.iter().sum()
    }

    /// Square roots of the pairwise differences, `(i, j, √(s_j - s_i))`.
    pub fn difference_roots(&self) -> Vec<(usize, usize, u64)> {
        let mut out = Vec::new();
        for i in 0..self.shifts.len() {
            for j in i + 1..self.shifts.len() {
                out.push((i, j, isqrt(self.shifts[j] - self.shifts[i])));
            }
        }
        out
    }

    pub fn bound(&self, n: u64) -> Ratio<u64> {
        Ratio::new(n + self.shift_sum(), self.k() as u64 + 1)
    }
}

/// `(N + Σ shifts)/(k + 1)`.
pub fn clique_upper_bound(n: u64, cert: &CliqueCertificate) -> Ratio<u64> {
    cert.bound(n)
}

/// `(√N - 1, (N + 543443)/4)`.
pub fn trivial_bounds(n: u64) -> (f64, Ratio<u64>) {
    ((n as f64).sqrt() - 1.0, Ratio::new(n + 543_443, 4))
}

/// For each `s <= limit`, every `t` with `s < t <= limit` and `t² - s²` a
/// square, from Euclid's parametrisation of Pythagorean triples.
fn pythagorean_edges(limit: u64) -> BTreeMap<u64, BTreeSet<u64>> {
    let mut edges: BTreeMap<u64, BTreeSet<u64>> = BTreeMap::new();
    let mut m = 2u64;
    while m * m < limit {
        for n in 1..m {
            if (m - n).is_multiple_of(2) || crate::numeric::gcd(m, n) != 1 {
                continue;
            }
            let (a, b, c) = (m * m - n * n, 2 * m * n, m * m + n * n);
            if c > limit {
                break;
            }
            let mut j = 1;
            while j * c <= limit {
                edges.entry(j * a).or_default().insert(j * c);
                edges.entry(j * b).or_default().insert(j * c);
                j += 1;
            }
        }
        m += 1;
    }
    edges
}

/// All shift systems of size `k` (2 or 3) with square roots `<= limit`,
/// best bound first (smallest shift sum).
pub fn find_square_cliques(limit: u64, k: usize) -> Result<Vec<CliqueCertificate>> {
    if limit > 1_000_000 {
        return Err(Error::InvalidParameter(format!(
            "limit must be at most 10^6, got {limit}"
        )));
    }
    if !(2..=3).contains(&k) {
        return Err(Error::InvalidParameter(format!(
            "k must be 2 or 3, got {k}"
        )));
    }
    let edges = pythagorean_edges(limit);
    let mut roots: Vec<Vec<u64>> = Vec::new();
    for (&r, above) in &edges {
        if k == 2 {
            roots.extend(above.iter().map(|&t| vec![r, t]));
            continue;
        }
        for &s in above {
            let Some(over_s) = edges.get(&s) else {
                continue;
            };
            for &t in above.range(s + 1..) {
                if over_s.contains(&t) {
                    roots.push(vec![r, s, t]);
                }
            }
        }
    }
    let mut certs: Vec<CliqueCertificate> = roots
        .into_iter()
        .map(|rs| CliqueCertificate::new(rs.into_iter().map(|x| x * x).collect()))
        .collect::<Result<_>>()?;
    certs.sort_by(|a, b| {
        a.shift_sum()
            .cmp(&b.shift_sum())
            .then_with(|| a.shifts.cmp(&b.shifts))
    });
    Ok(certs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_certificates_validate() {
        for shifts in KNOWN_CERTIFICATES {
            CliqueCertificate::new(shifts.to_vec()).unwrap();
        }
        let big = CliqueCertificate::new(KNOWN_CERTIFICATES[2].to_vec()).unwrap();
        let roots: Vec<u64> = big.difference_roots().iter().map(|r| r.2).collect();
        assert_eq!(roots, vec![104, 680, 672]);
        assert_eq!(big.shift_sum(), 543_443);
    }

    #[test]
    fn bound_examples() {
        let c = CliqueCertificate::new(vec![9, 25]).unwrap();
        assert_eq!(clique_upper_bound(100, &c), Ratio::new(134, 3));
        let c = CliqueCertificate::new(vec![1]).unwrap();
        assert_eq!(clique_upper_bound(9, &c), Ratio::new(10, 2));
        assert_eq!(trivial_bounds(169).0, 12.0);
        assert_eq!(trivial_bounds(4), (1.0, Ratio::new(543_447, 4)));
    }

    #[test]
    fn invalid_certificates() {
        assert!(CliqueCertificate::new(vec![9, 16]).is_err());
        assert!(CliqueCertificate::new(vec![8]).is_err());
        assert!(CliqueCertificate::new(vec![]).is_err());
    }

    #[test]
    fn clique_search() {
        let c = find_square_cliques(5, 2).unwrap();
        assert!(c.iter().any(|c| c.shifts() == [9, 25]));
        assert!(find_square_cliques(2, 2).unwrap().is_empty());
        let c = find_square_cliques(697, 3).unwrap();
        assert!(c.iter().any(|c| c.shifts() == KNOWN_CERTIFICATES[2]));
        assert!(find_square_cliques(10, 4).is_err());
    }
}
