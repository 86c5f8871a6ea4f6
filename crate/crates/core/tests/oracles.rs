//! Independent oracles for the exact solver and the counting routines.

use sqdiff::fourier::{count_via_integral, default_samples};
use sqdiff::rng::{random_set, seeded};
use sqdiff::sets::{
    count_square_differences_autocorr, count_square_differences_direct, IndicatorSet,
};
use sqdiff::solver::{solve_exact_d, Budget};

/// Plain include/exclude search over `u64` masks, pruned only by popcount.
fn mis(cand: u64, adj: &[u64], size: u32, best: &mut u32) {
    if cand == 0 {
        *best = (*best).max(size);
        return;
    }
    if size + cand.count_ones() <= *best {
        return;
    }
    let v = cand.trailing_zeros() as usize;
    mis(cand & !adj[v] & !(1 << v), adj, size + 1, best);
    mis(cand & !(1 << v), adj, size, best);
}

fn oracle_d(n: u64) -> u32 {
    let adj: Vec<u64> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| {
                    let d = i.abs_diff(j);
                    d > 0 && (d as f64).sqrt().round().powi(2) == d as f64
                })
                .fold(0u64, |m, j| m | 1 << j)
        })
        .collect();
    let mut best = 0;
    mis((1u64 << n) - 1, &adj, 0, &mut best);
    best
}

#[test]
fn solver_matches_mask_search_up_to_63() {
    for n in 1..=63 {
        let solved = solve_exact_d(n, Budget::unlimited()).unwrap();
        assert_eq!(solved.value, oracle_d(n) as u64, "N = {n}");
    }
}

#[test]
fn counts_match_pair_scan() {
    let mut rng = seeded(11);
    for n in [1u64, 2, 5, 64, 65, 300, 1000] {
        let s = random_set(&mut rng, n, 0.4);
        let members: Vec<u64> = s.members().collect();
        let mut scan = 0u64;
        for (i, &x) in members.iter().enumerate() {
            for &y in &members[i + 1..] {
                let d = y - x;
                let r = (d as f64).sqrt().round() as u64;
                if r * r == d {
                    scan += 1;
                }
            }
        }
        assert_eq!(count_square_differences_direct(&s).0, scan);
        assert_eq!(count_square_differences_autocorr(&s).unwrap().0, scan);
        let integral = count_via_integral(&s, default_samples(n)).unwrap();
        assert!((integral - scan as f64).abs() <= 1e-6 * n as f64);
    }
}

#[test]
fn known_small_values() {
    // D(N) for N = 1..12 by hand: {1}, {1}, {1,3}, ..., {1,3,6,8,11}
    let expected = [1, 1, 2, 2, 2, 3, 3, 4, 4, 4, 5, 5];
    for (i, &d) in expected.iter().enumerate() {
        assert_eq!(
            solve_exact_d(i as u64 + 1, Budget::unlimited())
                .unwrap()
                .value,
            d
        );
    }
    let w = IndicatorSet::from_members(11, [1, 3, 6, 8, 11]).unwrap();
    assert_eq!(count_square_differences_direct(&w).0, 0);
}
