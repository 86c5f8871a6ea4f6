//! Subsets of `{1..N}` stored as dense 64-bit words, and physical-side counts
//! of square differences.
//!
//! Element `x` lives at bit `(x - 1) % 64` of word `(x - 1) / 64`. Bits past
//! the capacity are always zero.

use crate::numeric::isqrt;
use crate::{Error, Result};
use realfft::RealFftPlanner;
use serde::{Deserialize, Serialize};
use std::fmt;

const WORD: u64 = 64;

/// A subset of `{1..n}`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SetJson", into = "SetJson")]
pub struct IndicatorSet {
    capacity: u64,
    words: Vec<u64>,
}

/// JSON form `{"n": N, "members": [sorted integers]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SetJson {
    pub n: u64,
    pub members: Vec<u64>,
}

impl TryFrom<SetJson> for IndicatorSet {
    type Error = Error;

    fn try_from(json: SetJson) -> Result<Self> {
        IndicatorSet::from_members(json.n, json.members)
    }
}

impl From<IndicatorSet> for SetJson {
    fn from(set: IndicatorSet) -> Self {
        SetJson {
            n: set.capacity,
            members: set.members().collect(),
        }
    }
}

/// Number of ordered pairs `(x, x - n^2)` inside a set, `n >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SquarePairCount(pub u64);

impl SquarePairCount {
    pub fn value(self) -> u64 {
        self.0
    }
}

fn word_count(capacity: u64) -> usize {
    capacity.div_ceil(WORD) as usize
}

impl IndicatorSet {
    pub fn empty(capacity: u64) -> Result<Self> {
        if capacity == 0 {
            return Err(Error::ZeroCapacity);
        }
        Ok(Self {
            capacity,
            words: vec![0; word_count(capacity)],
        })
    }

    /// The full interval `{1..capacity}`.
    pub fn full(capacity: u64) -> Result<Self> {
        let mut set = Self::empty(capacity)?;
        for w in set.words.iter_mut() {
            *w = u64::MAX;
        }
        set.clear_tail();
        Ok(set)
    }

    pub fn from_members<I: IntoIterator<Item = u64>>(capacity: u64, members: I) -> Result<Self> {
        let mut set = Self::empty(capacity)?;
        for x in members {
            set.insert(x)?;
        }
        Ok(set)
    }

    pub fn capacity(&self) -> u64 {
        self.capacity
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn insert(&mut self, x: u64) -> Result<()> {
        if x == 0 || x > self.capacity {
            return Err(Error::OutOfRange {
                value: x,
                capacity: self.capacity,
            });
        }
        let i = x - 1;
        self.words[(i / WORD) as usize] |= 1 << (i % WORD);
        Ok(())
    }

    pub fn remove(&mut self, x: u64) {
        if x >= 1 && x <= self.capacity {
            let i = x - 1;
            self.words[(i / WORD) as usize] &= !(1 << (i % WORD));
        }
    }

    #[inline]
    pub fn contains(&self, x: u64) -> bool {
        if x == 0 || x > self.capacity {
            return false;
        }
        let i = x - 1;
        self.words[(i / WORD) as usize] >> (i % WORD) & 1 == 1
    }

    pub fn len(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Members in increasing order.
    pub fn members(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as u64;
                w &= w - 1;
                Some(wi as u64 * WORD + tz + 1)
            })
        })
    }

    pub fn max_member(&self) -> Option<u64> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(wi, &w)| wi as u64 * WORD + (63 - w.leading_zeros() as u64) + 1)
    }

    /// Members `<= limit`, keeping the capacity.
    pub fn truncate(&self, limit: u64) -> Self {
        let mut out = self.clone();
        if limit >= self.capacity {
            return out;
        }
        let full = (limit / WORD) as usize;
        let rem = limit % WORD;
        if rem != 0 {
            out.words[full] &= (1u64 << rem) - 1;
            out.words[full + 1..].fill(0);
        } else {
            out.words[full..].fill(0);
        }
        out
    }

    /// Same members over a different capacity.
    pub fn with_capacity(&self, capacity: u64) -> Result<Self> {
        if let Some(max) = self.max_member() {
            if max > capacity {
                return Err(Error::OutOfRange {
                    value: max,
                    capacity,
                });
            }
        }
        let mut out = Self::empty(capacity)?;
        let n = out.words.len().min(self.words.len());
        out.words[..n].copy_from_slice(&self.words[..n]);
        Ok(out)
    }

    /// `{a + t : a in self}` over `new_capacity`.
    pub fn shift(&self, t: u64, new_capacity: u64) -> Result<Self> {
        let mut out = Self::empty(new_capacity)?;
        if let Some(max) = self.max_member() {
            if max + t > new_capacity {
                return Err(Error::ShiftOverflow {
                    max,
                    shift: t,
                    capacity: new_capacity,
                });
            }
        }
        let word_shift = (t / WORD) as usize;
        let bit_shift = (t % WORD) as u32;
        for (i, &w) in self.words.iter().enumerate() {
            if w == 0 {
                continue;
            }
            let lo = i + word_shift;
            out.words[lo] |= w << bit_shift;
            if bit_shift != 0 && lo + 1 < out.words.len() {
                out.words[lo + 1] |= w >> (WORD as u32 - bit_shift);
            }
        }
        Ok(out)
    }

    /// Union of two sets of equal capacity.
    pub fn union(&self, other: &Self) -> Result<Self> {
        self.check_same_capacity(other)?;
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a | b)
            .collect();
        Ok(Self {
            capacity: self.capacity,
            words,
        })
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check_same_capacity(other)?;
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        Ok(Self {
            capacity: self.capacity,
            words,
        })
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.members().all(|x| other.contains(x))
    }

    fn check_same_capacity(&self, other: &Self) -> Result<()> {
        if self.capacity != other.capacity {
            return Err(Error::InvalidParameter(format!(
                "capacity mismatch: {} vs {}",
                self.capacity, other.capacity
            )));
        }
        Ok(())
    }

    fn clear_tail(&mut self) {
        let rem = self.capacity % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Word `k` of the set shifted up by `s` positions.
    #[inline]
    fn shifted_word(&self, k: usize, s: u64) -> u64 {
        let ws = (s / WORD) as usize;
        let bs = (s % WORD) as u32;
        if k < ws {
            return 0;
        }
        let hi = self.words[k - ws] << bs;
        let lo = if bs != 0 && k > ws {
            self.words[k - ws - 1] >> (WORD as u32 - bs)
        } else {
            0
        };
        hi | lo
    }

    /// `|self ∩ (self + gap)|`, i.e. pairs `(x, x - gap)` inside the set.
    pub fn pairs_at_gap(&self, gap: u64) -> u64 {
        if gap == 0 || gap >= self.capacity {
            return 0;
        }
        (0..self.words.len())
            .map(|k| (self.words[k] & self.shifted_word(k, gap)).count_ones() as u64)
            .sum()
    }

    /// Compact text `N:h1h2...`, sixteen lowercase hex digits per word,
    /// least-significant word first.
    pub fn to_compact(&self) -> String {
        let mut s = format!("{}:", self.capacity);
        for w in &self.words {
            s.push_str(&format!("{w:016x}"));
        }
        s
    }

    pub fn from_compact(text: &str) -> Result<Self> {
        let (n, hex) = text
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::Parse("missing ':' separator".into()))?;
        let capacity: u64 = n
            .parse()
            .map_err(|_| Error::Parse(format!("bad capacity {n:?}")))?;
        let mut set = Self::empty(capacity)?;
        if hex.len() != set.words.len() * 16 {
            return Err(Error::Parse(format!(
                "expected {} hex digits for capacity {capacity}, found {}",
                set.words.len() * 16,
                hex.len()
            )));
        }
        if !hex
            .bytes()
            .all(|b| b.is_ascii_digit() || (b'a'..=b'f').contains(&b))
        {
            return Err(Error::Parse(
                "hex words must be lowercase hexadecimal".into(),
            ));
        }
        for (i, w) in set.words.iter_mut().enumerate() {
            *w = u64::from_str_radix(&hex[16 * i..16 * (i + 1)], 16)
                .map_err(|e| Error::Parse(e.to_string()))?;
        }
        let before = set.words.clone();
        set.clear_tail();
        if set.words != before {
            return Err(Error::Parse("bits set beyond capacity".into()));
        }
        Ok(set)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("set serialization is infallible")
    }

    /// Parses either the JSON or the compact text form.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Ok(serde_json::from_str(text)?)
        } else {
            Self::from_compact(text)
        }
    }
}

impl fmt::Debug for IndicatorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IndicatorSet(n={}, ", self.capacity)?;
        f.debug_set().entries(self.members()).finish()?;
        write!(f, ")")
    }
}

/// `[1, 4, 9, ..., floor(sqrt N)^2]`.
pub fn squares_up_to(n: u64) -> Vec<u64> {
    (1..=isqrt(n)).map(|k| k * k).collect()
}

/// Counts pairs `(x, x - n^2)` with both ends in the set, by word-parallel
/// intersection of the set with its square translates.
pub fn count_square_differences_direct(set: &IndicatorSet) -> SquarePairCount {
    let total = squares_up_to(set.capacity())
        .into_iter()
        .map(|s| set.pairs_at_gap(s))
        .sum();
    SquarePairCount(total)
}

/// Autocorrelation `c(d) = Σ_x B(x) B(x + d)` for `0 <= d < N`, via a real
/// FFT of length `next_pow2(2N + 1)`. Values are returned unrounded.
pub fn autocorrelation(set: &IndicatorSet) -> Vec<f64> {
    let n = set.capacity() as usize;
    let len = (2 * n + 1).next_power_of_two();
    let mut planner = RealFftPlanner::<f64>::new();
    let forward = planner.plan_fft_forward(len);
    let inverse = planner.plan_fft_inverse(len);

    let mut input = forward.make_input_vec();
    for x in set.members() {
        input[x as usize - 1] = 1.0;
    }
    let mut spectrum = forward.make_output_vec();
    forward
        .process(&mut input, &mut spectrum)
        .expect("buffer sizes come from the plan");
    for z in spectrum.iter_mut() {
        *z = num_complex::Complex64::new(z.norm_sqr(), 0.0);
    }
    let mut output = inverse.make_output_vec();
    inverse
        .process(&mut spectrum, &mut output)
        .expect("buffer sizes come from the plan");
    let scale = 1.0 / len as f64;
    output.truncate(n);
    output.iter_mut().for_each(|v| *v *= scale);
    output
}

/// Same count as [`count_square_differences_direct`], summing the
/// FFT autocorrelation over square gaps. Each rounded value must sit within
/// 0.25 of an integer.
pub fn count_square_differences_autocorr(set: &IndicatorSet) -> Result<SquarePairCount> {
    if set.is_empty() {
        return Ok(SquarePairCount(0));
    }
    let corr = autocorrelation(set);
    let mut total = 0u64;
    for s in squares_up_to(set.capacity()) {
        let Some(&value) = corr.get(s as usize) else {
            continue;
        };
        let rounded = value.round();
        if (value - rounded).abs() > 0.25 || rounded < 0.0 {
            return Err(Error::PrecisionLoss { gap: s, value });
        }
        total += rounded as u64;
    }
    Ok(SquarePairCount(total))
}

pub fn is_square_difference_free(set: &IndicatorSet) -> bool {
    squares_up_to(set.capacity())
        .into_iter()
        .all(|s| set.pairs_at_gap(s) == 0)
}
