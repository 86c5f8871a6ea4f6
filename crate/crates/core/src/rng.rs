//! Seeded, portable randomness for the randomized suites.
//!
//! The generator is xoshiro256++ seeded through SplitMix64, so a seed
//! reproduces the same stream on every platform.

use crate::sets::IndicatorSet;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

pub type SuiteRng = Xoshiro256PlusPlus;

pub fn seeded(seed: u64) -> SuiteRng {
    Xoshiro256PlusPlus::seed_from_u64(seed)
}

/// Each element of `{1..n}` kept independently with probability `density`.
pub fn random_set<R: Rng>(rng: &mut R, n: u64, density: f64) -> IndicatorSet {
    let mut set = IndicatorSet::empty(n).expect("n >= 1");
    for x in 1..=n {
        if rng.gen_bool(density.clamp(0.0, 1.0)) {
            set.insert(x).expect("in range");
        }
    }
    set
}

/// A uniformly random subset of `{1..n}` with exactly `size` elements.
pub fn random_set_of_size<R: Rng>(rng: &mut R, n: u64, size: u64) -> IndicatorSet {
    let picks = sample(rng, n as usize, size.min(n) as usize);
    IndicatorSet::from_members(n, picks.into_iter().map(|i| i as u64 + 1)).expect("in range")
}
