//! Integer partitions, sub-partition (subset-sum) detection and cycle-type
//! probabilities.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A partition of `n`: weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Validates that `parts` is weakly decreasing with all parts positive.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidArgument("partition parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument("partition parts must be weakly decreasing".into()));
        }
        Ok(Partition { parts })
    }

    /// Sorts the given positive parts into a partition.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The integer being partitioned.
    pub fn n(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn largest(&self) -> Option<u32> {
        self.parts.first().copied()
    }

    /// `(part, multiplicity)` pairs in decreasing order of part.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        multiplicities(&self.parts)
    }

    /// Whether some sub-multiset of the parts sums to `b`.
    pub fn has_subpartition(&self, b: u32) -> bool {
        has_subpartition(self, b)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::InvalidArgument(format!("bad part {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

pub(crate) fn multiplicities(parts: &[u32]) -> Vec<(u32, u32)> {
    let mut out: Vec<(u32, u32)> = Vec::new();
    for &p in parts {
        match out.last_mut() {
            Some((q, m)) if *q == p => *m += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// Partitions of `n` with every part at most `max_part`, in decreasing
/// lexicographic order.
///
/// [`Partitions::advance`] exposes the current parts without allocating;
/// the [`Iterator`] impl clones them into a [`Partition`].
#[derive(Debug, Clone)]
pub struct Partitions {
    parts: Vec<u32>,
    started: bool,
    done: bool,
}

impl Partitions {
    pub fn new(n: u32, max_part: u32) -> Self {
        let mut parts = Vec::new();
        let mut done = false;
        if n > 0 {
            if max_part == 0 {
                done = true;
            } else {
                let mut rem = n;
                while rem >= max_part {
                    parts.push(max_part);
                    rem -= max_part;
                }
                if rem > 0 {
                    parts.push(rem);
                }
            }
        }
        Partitions {
            parts,
            started: false,
            done,
        }
    }

    /// Steps to the next partition and returns its parts.
    pub fn advance(&mut self) -> Option<&[u32]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.parts);
        }
        let mut ones = 0u32;
        while self.parts.last() == Some(&1) {
            self.parts.pop();
            ones += 1;
        }
        let Some(last) = self.parts.last_mut() else {
            self.done = true;
            return None;
        };
        *last -= 1;
        let x = *last;
        let mut rem = ones + 1;
        while rem >= x {
            self.parts.push(x);
            rem -= x;
        }
        if rem > 0 {
            self.parts.push(rem);
        }
        Some(&self.parts)
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        self.advance().map(|p| Partition { parts: p.to_vec() })
    }
}

/// Every partition of `n`, each exactly once, in decreasing lexicographic order.
pub fn enumerate_partitions(n: u32) -> Partitions {
    Partitions::new(n, n)
}

/// Calls `f` on every partition of `n` whose largest part is exactly `largest`.
///
/// The shards `largest = 1..=n` together cover every partition of `n > 0`
/// once, in the same relative order as [`enumerate_partitions`].
pub fn for_each_in_shard(n: u32, largest: u32, mut f: impl FnMut(&[u32])) {
    if largest == 0 || largest > n {
        return;
    }
    let mut buf = vec![largest];
    let mut rest = Partitions::new(n - largest, largest);
    while let Some(tail) = rest.advance() {
        buf.truncate(1);
        buf.extend_from_slice(tail);
        f(&buf);
    }
}

/// Exact partition numbers `p(0..=n)` by Euler's pentagonal recurrence.
pub fn partition_numbers(n: u32) -> Vec<BigUint> {
    let n = n as usize;
    let mut p: Vec<BigInt> = Vec::with_capacity(n + 1);
    p.push(BigInt::one());
    for m in 1..=n {
        let mut acc = BigInt::zero();
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let sign_plus = k % 2 == 1;
            let mut term = p[m - g1].clone();
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                term += &p[m - g2];
            }
            if sign_plus {
                acc += term;
            } else {
                acc -= term;
            }
        }
        p.push(acc);
    }
    p.into_iter()
        .map(|v| v.to_biguint().expect("partition numbers are positive"))
        .collect()
}

/// `p(n)`.
pub fn count_partitions(n: u32) -> BigUint {
    partition_numbers(n).pop().expect("table is non-empty")
}

/// `p(n)` as `u64`, saturating.
pub(crate) fn count_partitions_u64(n: u32) -> u64 {
    let c = count_partitions(n);
    u64::try_from(&c).unwrap_or(u64::MAX)
}

/// Reachable subset sums of a multiset of parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetSumProfile {
    n: u32,
    words: Vec<u64>,
    counts: Option<Vec<BigUint>>,
}

impl SubsetSumProfile {
    /// Reachability only.
    pub fn reachable(parts: &[u32]) -> Self {
        let n: u32 = parts.iter().sum();
        let mut words = Vec::new();
        subset_sum_bits(parts, &mut words);
        SubsetSumProfile {
            n,
            words,
            counts: None,
        }
    }

    /// Reachability plus, for every `d`, the number of sub-collections of the
    /// (individually labelled) parts summing to `d`.
    pub fn with_counts(parts: &[u32]) -> Self {
        let mut profile = Self::reachable(parts);
        let n = profile.n as usize;
        let mut counts = vec![BigUint::zero(); n + 1];
        counts[0] = BigUint::one();
        let mut top = 0usize;
        for &p in parts {
            let p = p as usize;
            for d in (p..=top + p).rev() {
                if !counts[d - p].is_zero() {
                    let add = counts[d - p].clone();
                    counts[d] += add;
                }
            }
            top += p;
        }
        profile.counts = Some(counts);
        profile
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn contains(&self, d: u32) -> bool {
        d <= self.n && bit(&self.words, d as usize)
    }

    /// Number of reachable sums, `0` and `n` included.
    pub fn num_reachable(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    pub fn sums(&self) -> impl Iterator<Item = u32> + '_ {
        (0..=self.n).filter(|&d| self.contains(d))
    }

    pub fn counts(&self) -> Option<&[BigUint]> {
        self.counts.as_deref()
    }
}

#[inline]
pub(crate) fn bit(words: &[u64], i: usize) -> bool {
    words.get(i / 64).is_some_and(|w| (w >> (i % 64)) & 1 == 1)
}

/// Fills `words` with the bitset of reachable sub-multiset sums of `parts`.
///
/// Equal parts are grouped and their multiplicity is split into chunks
/// `1, 2, 4, …, rest`, so each distinct part costs `O(log m)` shift-ors.
pub(crate) fn subset_sum_bits(parts: &[u32], words: &mut Vec<u64>) {
    let n: usize = parts.iter().map(|&p| p as usize).sum();
    let len = n / 64 + 1;
    words.clear();
    words.resize(len, 0);
    words[0] = 1;
    let mut i = 0;
    while i < parts.len() {
        let d = parts[i];
        let mut j = i;
        while j < parts.len() && parts[j] == d {
            j += 1;
        }
        let mut m = (j - i) as u32;
        let mut chunk = 1u32;
        while m > 0 {
            let c = chunk.min(m);
            shift_or(words, (c * d) as usize);
            m -= c;
            chunk <<= 1;
        }
        i = j;
    }
    let extra = len * 64 - (n + 1);
    if extra > 0 {
        words[len - 1] &= u64::MAX >> extra;
    }
}

#[inline]
fn shift_or(words: &mut [u64], s: usize) {
    let ws = s / 64;
    let bs = s % 64;
    let len = words.len();
    for w in (ws..len).rev() {
        let mut v = words[w - ws] << bs;
        if bs > 0 && w > ws {
            v |= words[w - ws - 1] >> (64 - bs);
        }
        words[w] |= v;
    }
}

/// Whether some sub-multiset of `λ` sums to `b`. `b = 0` is always true.
pub fn has_subpartition(lambda: &Partition, b: u32) -> bool {
    if b == 0 || b == lambda.n() {
        return true;
    }
    if b > lambda.n() {
        return false;
    }
    let mut words = Vec::new();
    subset_sum_bits(&lambda.parts, &mut words);
    bit(&words, b as usize)
}

/// `∏_j j^{m_j} m_j!`, the centralizer order of the cycle type.
pub fn centralizer_order(lambda: &Partition) -> BigUint {
    centralizer_of_parts(lambda.parts())
}

pub(crate) fn centralizer_of_parts(parts: &[u32]) -> BigUint {
    let mut z = BigUint::one();
    for (j, m) in multiplicities(parts) {
        for i in 1..=m {
            z *= u64::from(j) * u64::from(i);
        }
    }
    z
}

/// `P(λ) = ∏_j 1/(j^{m_j} m_j!)`: probability that a uniform permutation of
/// `S_n` has cycle type `λ`.
pub fn cycle_type_probability(lambda: &Partition) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(centralizer_order(lambda)))
}

/// `n!`.
pub fn factorial(n: u32) -> BigUint {
    (1..=u64::from(n)).fold(BigUint::one(), |acc, k| acc * k)
}

/// Size of the conjugacy class of cycle type `λ`: `n! · P(λ)`.
pub fn class_size(lambda: &Partition) -> BigUint {
    factorial(lambda.n()) / centralizer_order(lambda)
}

/// `Λ(n,b)`: partitions of `n` with a `b`-subpartition, streamed.
pub fn lambda_iter(n: u32, b: u32) -> impl Iterator<Item = Partition> {
    let mut words = Vec::new();
    enumerate_partitions(n).filter(move |p| {
        if b == 0 || b == n {
            return true;
        }
        subset_sum_bits(p.parts(), &mut words);
        bit(&words, b as usize)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn naive_has_subpartition(parts: &[u32], b: u32) -> bool {
        (0u64..(1 << parts.len())).any(|mask| {
            parts
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &x)| x)
                .sum::<u32>()
                == b
        })
    }

    #[test]
    fn enumerate_four() {
        let got: Vec<String> = enumerate_partitions(4).map(|p| p.to_string()).collect();
        assert_eq!(got, ["4", "3,1", "2,2", "2,1,1", "1,1,1,1"]);
    }

    #[test]
    fn enumerate_zero_is_empty_partition() {
        let got: Vec<Partition> = enumerate_partitions(0).collect();
        assert_eq!(got, vec![Partition::empty()]);
    }

    #[test]
    fn enumerate_fifty() {
        assert_eq!(enumerate_partitions(50).count(), 204_226);
    }

    #[test]
    fn counts_match_enumeration() {
        let table = partition_numbers(60);
        for n in 0..=60u32 {
            let c = Partitions::new(n, n).count();
            assert_eq!(BigUint::from(c), table[n as usize], "n={n}");
        }
    }

    #[test]
    fn partition_number_values() {
        assert_eq!(count_partitions(0), BigUint::from(1u32));
        assert_eq!(count_partitions(4), BigUint::from(5u32));
        assert_eq!(count_partitions(80), BigUint::from(15_796_476u64));
    }

    #[test]
    fn shards_cover_everything_in_order() {
        for n in 1..=20u32 {
            let mut sharded = Vec::new();
            for k in (1..=n).rev() {
                for_each_in_shard(n, k, |parts| sharded.push(parts.to_vec()));
            }
            let direct: Vec<Vec<u32>> = enumerate_partitions(n).map(|p| p.parts).collect();
            assert_eq!(sharded, direct);
        }
    }

    #[test]
    fn subpartition_examples() {
        assert!(!has_subpartition(&p(&[3, 1]), 2));
        assert!(has_subpartition(&p(&[2, 2]), 2));
        assert!(has_subpartition(&p(&[5, 3, 1]), 0));
        assert!(has_subpartition(&Partition::empty(), 0));
    }

    #[test]
    fn subpartition_matches_naive_enumeration() {
        for n in 0..=18u32 {
            for lambda in enumerate_partitions(n) {
                for b in 0..=n {
                    assert_eq!(
                        has_subpartition(&lambda, b),
                        naive_has_subpartition(lambda.parts(), b),
                        "λ={lambda} b={b}"
                    );
                }
            }
        }
    }

    #[test]
    fn wide_bitsets() {
        // 70 ones and a 130: crosses several words.
        let mut parts = vec![130];
        parts.extend(std::iter::repeat_n(1, 70));
        let lambda = p(&parts);
        let prof = SubsetSumProfile::reachable(lambda.parts());
        assert_eq!(prof.num_reachable(), 142);
        assert!(prof.contains(130 + 35));
        assert!(!prof.contains(71));
        assert!(prof.contains(200));
    }

    #[test]
    fn profile_is_symmetric() {
        for lambda in enumerate_partitions(16) {
            let prof = SubsetSumProfile::reachable(lambda.parts());
            assert!(prof.contains(0) && prof.contains(16));
            for d in 0..=16 {
                assert_eq!(prof.contains(d), prof.contains(16 - d));
            }
        }
    }

    #[test]
    fn labelled_counts() {
        let prof = SubsetSumProfile::with_counts(&[1, 1]);
        let c: Vec<u32> = prof
            .counts()
            .unwrap()
            .iter()
            .map(|v| u32::try_from(v).unwrap())
            .collect();
        assert_eq!(c, [1, 2, 1]);
    }

    #[test]
    fn cycle_type_probabilities() {
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(cycle_type_probability(&p(&[1, 1, 1, 1, 1])), r(1, 120));
        assert_eq!(cycle_type_probability(&p(&[2, 1, 1])), r(1, 4));
        assert_eq!(cycle_type_probability(&p(&[2, 2])), r(1, 8));
        assert_eq!(class_size(&p(&[2, 1, 1])), BigUint::from(6u32));
    }

    #[test]
    fn probabilities_sum_to_one() {
        for n in 0..=40u32 {
            let total = enumerate_partitions(n)
                .map(|l| cycle_type_probability(&l))
                .fold(BigRational::zero(), |a, b| a + b);
            assert_eq!(total, BigRational::one(), "n={n}");
        }
    }

    #[test]
    fn lambda_examples() {
        let got: Vec<String> = lambda_iter(4, 2).map(|p| p.to_string()).collect();
        assert_eq!(got, ["2,2", "2,1,1", "1,1,1,1"]);
        let got: Vec<String> = lambda_iter(2, 1).map(|p| p.to_string()).collect();
        assert_eq!(got, ["1,1"]);
        assert_eq!(lambda_iter(7, 7).count(), 15);
    }

    #[test]
    fn lambda_symmetry() {
        for n in 0..=40u32 {
            for b in 0..=n / 2 {
                assert_eq!(lambda_iter(n, b).count(), lambda_iter(n, n - b).count());
            }
        }
    }

    #[test]
    fn parse_roundtrip() {
        let lambda: Partition = "2,1,1".parse().unwrap();
        assert_eq!(lambda, p(&[2, 1, 1]));
        assert_eq!(lambda.to_string(), "2,1,1");
        assert!("1,2".parse::<Partition>().is_err());
        assert!("2,0".parse::<Partition>().is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn subset_sum_symmetric(parts in proptest::collection::vec(1u32..40, 0..30)) {
                let lambda = Partition::from_unsorted(parts).unwrap();
                let prof = SubsetSumProfile::reachable(lambda.parts());
                let n = lambda.n();
                for d in 0..=n {
                    prop_assert_eq!(prof.contains(d), prof.contains(n - d));
                }
            }
        }
    }
}
