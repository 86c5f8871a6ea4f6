//! `D(N)`: exact search, a brute-force oracle, greedy lower bounds, clique
//! certificates for upper bounds, and a journal of known values.
//!
//! The exact solver builds the table `D(1), D(2), ..., D(N)`. Going from
//! `k - 1` to `k` the value grows by at most one, and a set of size
//! `D(k-1) + 1` in `{1..k}` has to contain both `1` and `k` (otherwise it is a
//! translate of a subset of `{1..k-1}`). So each step is a single
//! decision problem on the candidates compatible with both endpoints, pruned
//! with the table itself: any candidate pool spanning `s` consecutive
//! integers holds at most `D(s)` more elements.

mod cache;
mod certificates;

pub use cache::{cache_path, CacheRecord, SolverCache, CACHE_ENV};
pub use certificates::{
    clique_upper_bound, find_square_cliques, trivial_bounds, CliqueCertificate, KNOWN_CERTIFICATES,
};

use crate::numeric::isqrt;
use crate::sets::{is_square_difference_free, squares_up_to, IndicatorSet};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::time::{Duration, Instant};

/// Largest `N` accepted by [`brute_force_d`].
pub const BRUTE_FORCE_MAX: u64 = 30;
/// Largest `N` accepted by [`solve_exact_d`].
pub const EXACT_MAX: u64 = 500;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Exact,
    LowerBound,
    UpperBound,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Exact => "exact",
            Status::LowerBound => "lower-bound",
            Status::UpperBound => "upper-bound",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverResult {
    pub n: u64,
    pub value: u64,
    pub witness: Option<IndicatorSet>,
    pub status: Status,
}

/// Search limits. The node limit is deterministic; the time limit is not.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Self {
            node_limit: None,
            time_limit: None,
        }
    }

    pub fn nodes(limit: u64) -> Self {
        Self {
            node_limit: Some(limit),
            time_limit: None,
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::nodes(200_000_000)
    }
}

/// `D(N)` by enumerating all `2^N` subsets. The witness is the
/// lexicographically smallest maximum set.
pub fn brute_force_d(n: u64) -> Result<SolverResult> {
    if n == 0 {
        return Err(Error::ZeroCapacity);
    }
    if n > BRUTE_FORCE_MAX {
        return Err(Error::CapacityExceeded {
            n,
            max: BRUTE_FORCE_MAX,
        });
    }
    let squares = squares_up_to(n - 1);
    let mut best: u64 = 0;
    let mut best_size = 0u32;
    for mask in 1u64..(1u64 << n) {
        let size = mask.count_ones();
        if size < best_size {
            continue;
        }
        if squares.iter().any(|&s| mask & (mask >> s) != 0) {
            continue;
        }
        let diff = mask ^ best;
        if size > best_size || mask & diff & diff.wrapping_neg() != 0 {
            best = mask;
            best_size = size;
        }
    }
    let witness =
        IndicatorSet::from_members(n, (0..n).filter(|i| best >> i & 1 == 1).map(|i| i + 1))?;
    Ok(SolverResult {
        n,
        value: best_size as u64,
        witness: Some(witness),
        status: Status::Exact,
    })
}

/// Greedy selection avoiding the differences in `h`: take the smallest
/// element not yet ruled out, then rule out everything `h` above it.
pub fn greedy_difference_free(n: u64, h: &[u64]) -> Result<IndicatorSet> {
    let mut set = IndicatorSet::empty(n)?;
    let mut blocked = vec![false; n as usize + 1];
    let mut gaps: Vec<u64> = h.iter().copied().filter(|&g| g >= 1 && g < n).collect();
    gaps.sort_unstable();
    gaps.dedup();
    for a in 1..=n {
        if blocked[a as usize] {
            continue;
        }
        set.insert(a)?;
        for &g in &gaps {
            if a + g > n {
                break;
            }
            blocked[(a + g) as usize] = true;
        }
    }
    Ok(set)
}

/// [`greedy_difference_free`] with `H` the nonzero squares.
pub fn greedy_square(n: u64) -> Result<IndicatorSet> {
    greedy_difference_free(n, &squares_up_to(n))
}

/// `(N - 1)/(|H ∩ {1..N}| + 1)` for `H` the squares.
pub fn greedy_guarantee(n: u64) -> f64 {
    (n as f64 - 1.0) / (isqrt(n) as f64 + 1.0)
}

const ROW_WORDS: usize = (EXACT_MAX as usize + 1).div_ceil(64);
type Row = [u64; ROW_WORDS];

fn row_set(row: &mut Row, x: usize) {
    row[x / 64] |= 1 << (x % 64);
}

fn row_clear(row: &mut Row, x: usize) {
    row[x / 64] &= !(1 << (x % 64));
}

fn row_count(row: &Row) -> u32 {
    row.iter().map(|w| w.count_ones()).sum()
}

fn row_lowest(row: &Row) -> Option<usize> {
    row.iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

fn row_highest(row: &Row) -> Option<usize> {
    row.iter()
        .enumerate()
        .rev()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| i * 64 + 63 - w.leading_zeros() as usize)
}

fn row_and_not(a: &Row, b: &Row) -> Row {
    let mut out = *a;
    for (o, w) in out.iter_mut().zip(b) {
        *o &= !w;
    }
    out
}

struct Search<'a> {
    /// `adj[x]` holds every `y` with `|x - y|` a nonzero square.
    adj: &'a [Row],
    /// `table[s] = D(s)` for all `s` already solved.
    table: &'a [u64],
    chosen: Vec<usize>,
    nodes: u64,
    node_limit: u64,
    deadline: Option<Instant>,
    aborted: bool,
}

impl Search<'_> {
    /// Extends `chosen` by `need` elements of `pool`, lexicographically first.
    fn extend(&mut self, pool: Row, need: u64) -> bool {
        if need == 0 {
            return true;
        }
        self.nodes += 1;
        if self.nodes > self.node_limit
            || (self.nodes.is_multiple_of(4096)
                && self.deadline.is_some_and(|d| Instant::now() >= d))
        {
            self.aborted = true;
            return false;
        }
        let count = row_count(&pool) as u64;
        if count < need {
            return false;
        }
        let (lo, hi) = (
            row_lowest(&pool).expect("non-empty"),
            row_highest(&pool).expect("non-empty"),
        );
        if self.table[hi - lo + 1].min(count) < need {
            return false;
        }
        let mut rest = pool;
        row_clear(&mut rest, lo);
        self.chosen.push(lo);
        if self.extend(row_and_not(&rest, &self.adj[lo]), need - 1) {
            return true;
        }
        self.chosen.pop();
        if self.aborted {
            return false;
        }
        self.extend(rest, need)
    }
}

fn adjacency(n: usize) -> Vec<Row> {
    let squares = squares_up_to(n as u64);
    let mut adj = vec![[0u64; ROW_WORDS]; n + 1];
    for x in 1..=n {
        for &s in &squares {
            let s = s as usize;
            if x + s <= n {
                row_set(&mut adj[x], x + s);
                row_set(&mut adj[x + s], x);
            }
        }
    }
    adj
}

/// Exact `D(N)` by the incremental search described in the module docs.
///
/// When the budget runs out the result degrades to a lower bound carrying the
/// better of the last solved witness and the greedy set.
pub fn solve_exact_d(n: u64, budget: Budget) -> Result<SolverResult> {
    if n == 0 {
        return Err(Error::ZeroCapacity);
    }
    if n > EXACT_MAX {
        return Err(Error::CapacityExceeded { n, max: EXACT_MAX });
    }
    let nu = n as usize;
    let adj = adjacency(nu);
    let mut table = vec![0u64; nu + 1];
    let mut best: Vec<usize> = Vec::new();
    let deadline = budget.time_limit.map(|t| Instant::now() + t);
    let mut nodes = 0u64;
    for k in 1..=nu {
        let target = table[k - 1] + 1;
        let found = if k == 1 {
            Some(vec![1])
        } else {
            let mut pool = [0u64; ROW_WORDS];
            for x in 2..k {
                row_set(&mut pool, x);
            }
            let pool = row_and_not(&row_and_not(&pool, &adj[1]), &adj[k]);
            if adj[1][k / 64] >> (k % 64) & 1 == 1 {
                None
            } else {
                let mut search = Search {
                    adj: &adj,
                    table: &table,
                    chosen: vec![1],
                    nodes,
                    node_limit: budget.node_limit.unwrap_or(u64::MAX),
                    deadline,
                    aborted: false,
                };
                let ok = search.extend(pool, target - 2);
                nodes = search.nodes;
                if search.aborted {
                    log::info!("budget exhausted at k={k} after {nodes} nodes");
                    return Ok(lower_bound(n, &best));
                }
                ok.then(|| {
                    let mut chosen = search.chosen;
                    chosen.push(k);
                    chosen
                })
            }
        };
        match found {
            Some(set) => {
                table[k] = target;
                best = set;
            }
            None => table[k] = table[k - 1],
        }
    }
    let witness = IndicatorSet::from_members(n, best.iter().map(|&x| x as u64))?;
    debug_assert!(is_square_difference_free(&witness));
    log::debug!("D({n}) = {} after {nodes} nodes", table[nu]);
    Ok(SolverResult {
        n,
        value: table[nu],
        witness: Some(witness),
        status: Status::Exact,
    })
}

fn lower_bound(n: u64, solved: &[usize]) -> SolverResult {
    let greedy = greedy_square(n).expect("n >= 1");
    let partial =
        IndicatorSet::from_members(n, solved.iter().map(|&x| x as u64)).expect("in range");
    let witness = if partial.len() > greedy.len() {
        partial
    } else {
        greedy
    };
    SolverResult {
        n,
        value: witness.len(),
        witness: Some(witness),
        status: Status::LowerBound,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn members(s: &IndicatorSet) -> Vec<u64> {
        s.members().collect()
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_d(1).unwrap().value, 1);
        assert_eq!(brute_force_d(2).unwrap().value, 1);
        assert_eq!(brute_force_d(4).unwrap().value, 2);
        let r = brute_force_d(3).unwrap();
        assert_eq!(members(r.witness.as_ref().unwrap()), vec![1, 3]);
        assert!(matches!(
            brute_force_d(31),
            Err(Error::CapacityExceeded { .. })
        ));
        assert!(brute_force_d(0).is_err());
    }

    #[test]
    fn exact_examples() {
        let r = solve_exact_d(1, Budget::unlimited()).unwrap();
        assert_eq!(
            (r.value, members(r.witness.as_ref().unwrap())),
            (1, vec![1])
        );
        let r = solve_exact_d(3, Budget::unlimited()).unwrap();
        assert_eq!(
            (r.value, members(r.witness.as_ref().unwrap())),
            (2, vec![1, 3])
        );
        assert!(solve_exact_d(0, Budget::unlimited()).is_err());
    }

    #[test]
    fn exact_matches_brute_force_small() {
        for n in 1..=20 {
            let a = solve_exact_d(n, Budget::unlimited()).unwrap();
            let b = brute_force_d(n).unwrap();
            assert_eq!(a.value, b.value, "N={n}");
            let w = a.witness.unwrap();
            assert!(is_square_difference_free(&w));
            assert_eq!(w.len(), a.value);
        }
    }

    #[test]
    fn tiny_budget_degrades() {
        let r = solve_exact_d(120, Budget::nodes(10)).unwrap();
        assert_eq!(r.status, Status::LowerBound);
        let w = r.witness.unwrap();
        assert!(is_square_difference_free(&w));
        assert_eq!(w.len(), r.value);
        // deterministic under a node budget
        assert_eq!(
            solve_exact_d(120, Budget::nodes(10)).unwrap().value,
            r.value
        );
    }

    #[test]
    fn greedy_examples() {
        let g = greedy_square(10).unwrap();
        assert_eq!(members(&g), vec![1, 3, 6, 8]);
        assert_eq!(members(&greedy_square(1).unwrap()), vec![1]);
        let g = greedy_square(100).unwrap();
        assert!(g.len() as f64 >= 9.0 && is_square_difference_free(&g));
        let g = greedy_difference_free(12, &[2, 5]).unwrap();
        for x in g.members() {
            assert!(!g.contains(x + 2) && !g.contains(x + 5));
        }
    }
}
