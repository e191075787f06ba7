//! Monte-Carlo estimates of `|T(n,b)|/n!` and `|H(n,b)|/p^n`.
//!
//! Trials are grouped into fixed-size batches and batch `i` draws from
//! ChaCha8 stream `i` of the seed, so the hit count depends only on
//! `(seed, trials)` and never on how batches are spread over threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::census::Kind;
use crate::error::{Error, Result};
use crate::gfpoly::{checked_pow, factorization_type_by_gcd, is_prime_u64, MonicPoly, SpfTable};
use crate::partitions::{bit, subset_sum_bits, Partition};

/// Trials per random stream.
pub const BATCH: u64 = 4096;

pub const DEFAULT_SEED: u64 = 0x6d75_6c74_6162;

/// Two-sided 95% normal quantile.
const Z95: f64 = 1.959_963_984_540_054;

/// Largest sieve the polynomial sampler builds before switching to
/// gcd-based factorization.
const SAMPLER_TABLE_LIMIT: u64 = 20_000_000;

/// Cycle type of a uniform random permutation of `n` points.
///
/// The cycle through the smallest unplaced point has length uniform on
/// `1..=remaining`; repeating until nothing remains gives `λ_σ` with the
/// exact distribution `P(λ)`.
pub fn sample_cycle_type<R: Rng + ?Sized>(n: u32, rng: &mut R) -> Partition {
    let mut parts = Vec::new();
    let mut remaining = n;
    while remaining > 0 {
        let len = rng.random_range(1..=remaining);
        parts.push(len);
        remaining -= len;
    }
    Partition::from_unsorted(parts).expect("cycle lengths are positive")
}

/// A uniform random monic polynomial of degree `n` over `F_p`.
pub fn sample_monic<R: Rng + ?Sized>(p: u32, n: usize, rng: &mut R) -> MonicPoly {
    let coeffs = (0..n).map(|_| rng.random_range(0..p)).collect();
    MonicPoly::new(p, coeffs).expect("coefficients reduced mod p")
}

/// Hits over trials with a Wilson score interval.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleEstimate {
    pub kind: Kind,
    pub q: Option<u64>,
    pub n: u32,
    pub b: u32,
    pub trials: u64,
    pub hits: u64,
    pub seed: u64,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

impl SampleEstimate {
    fn new(kind: Kind, q: Option<u64>, n: u32, b: u32, trials: u64, hits: u64, seed: u64) -> Self {
        let (ci_low, ci_high) = wilson_interval(hits, trials);
        SampleEstimate {
            kind,
            q,
            n,
            b,
            trials,
            hits,
            seed,
            estimate: hits as f64 / trials as f64,
            ci_low,
            ci_high,
        }
    }

    /// Binomial standard error of the point estimate.
    pub fn sigma(&self) -> f64 {
        (self.estimate * (1.0 - self.estimate) / self.trials as f64).sqrt()
    }

    pub fn interval_contains(&self, x: f64) -> bool {
        self.ci_low <= x && x <= self.ci_high
    }
}

/// 95% Wilson score interval for `hits` successes in `trials`.
pub fn wilson_interval(hits: u64, trials: u64) -> (f64, f64) {
    let n = trials as f64;
    let p = hits as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z95 / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    let lo = (center - half).max(0.0).min(p);
    let hi = (center + half).min(1.0).max(p);
    (lo, hi)
}

fn count_hits(trials: u64, seed: u64, hit: impl Fn(&mut ChaCha8Rng) -> bool + Sync) -> u64 {
    let batches = trials.div_ceil(BATCH);
    (0..batches)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            let len = BATCH.min(trials - i * BATCH);
            (0..len).filter(|_| hit(&mut rng)).count() as u64
        })
        .sum()
}

fn check_trials(n: u32, b: u32, trials: u64) -> Result<()> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be ≥ 1".into()));
    }
    if b > n {
        return Err(Error::InvalidArgument(format!("b = {b} exceeds n = {n}")));
    }
    Ok(())
}

/// Estimates `|T(n,b)|/n!`: a hit is a cycle type with a `b`-subpartition.
pub fn estimate_t_density(n: u32, b: u32, trials: u64, seed: u64) -> Result<SampleEstimate> {
    check_trials(n, b, trials)?;
    let hits = count_hits(trials, seed, |rng| {
        let lambda = sample_cycle_type(n, rng);
        let mut words = Vec::new();
        subset_sum_bits(lambda.parts(), &mut words);
        bit(&words, b as usize)
    });
    Ok(SampleEstimate::new(Kind::T, None, n, b, trials, hits, seed))
}

/// Estimates `|H(n,b)|/p^n` from uniform random monic polynomials.
///
/// Small degrees are factored with a sieve table, larger ones by
/// squarefree and distinct-degree factorization; both return the same
/// factorization type, so the estimate does not depend on the route.
pub fn estimate_h_density(p: u32, n: u32, b: u32, trials: u64, seed: u64) -> Result<SampleEstimate> {
    check_trials(n, b, trials)?;
    if !is_prime_u64(u64::from(p)) {
        return Err(Error::NotPrime(u64::from(p)));
    }
    if p > crate::gfpoly::MAX_MODULUS {
        return Err(Error::OutOfRange(format!("p = {p}")));
    }
    let small = checked_pow(u64::from(p), n as usize).is_some_and(|s| s <= SAMPLER_TABLE_LIMIT);
    let table = if small {
        Some(SpfTable::build(p, n as usize)?)
    } else {
        None
    };
    let hits = count_hits(trials, seed, |rng| {
        let f = sample_monic(p, n as usize, rng);
        let lambda = match &table {
            Some(t) => t.factorization_type(&f).expect("degree within table"),
            None => factorization_type_by_gcd(&f),
        };
        let mut words = Vec::new();
        subset_sum_bits(lambda.parts(), &mut words);
        bit(&words, b as usize)
    });
    Ok(SampleEstimate::new(Kind::H, Some(u64::from(p)), n, b, trials, hits, seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::{count_h, count_t, ratio_f64};
    use crate::partitions::{cycle_type_probability, enumerate_partitions};
    use num_traits::ToPrimitive;
    use std::collections::HashMap;

    #[test]
    fn one_point() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            assert_eq!(sample_cycle_type(1, &mut rng).parts(), [1]);
        }
    }

    fn cycle_type_frequencies(n: u32, draws: u64) -> HashMap<Partition, u64> {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut freq = HashMap::new();
        for _ in 0..draws {
            *freq.entry(sample_cycle_type(n, &mut rng)).or_insert(0) += 1;
        }
        freq
    }

    #[test]
    fn two_points_chi_square() {
        let draws = 1_000_000u64;
        let freq = cycle_type_frequencies(2, draws);
        let expected = draws as f64 / 2.0;
        let chi2: f64 = freq
            .values()
            .map(|&o| (o as f64 - expected).powi(2) / expected)
            .sum();
        // one degree of freedom, 99.9% quantile
        assert!(chi2 < 10.83, "chi2 = {chi2}");
    }

    #[test]
    fn four_points_match_exact_probabilities() {
        let draws = 400_000u64;
        let freq = cycle_type_frequencies(4, draws);
        for lambda in enumerate_partitions(4) {
            let p = cycle_type_probability(&lambda).to_f64().unwrap();
            let sigma = (p * (1.0 - p) / draws as f64).sqrt();
            let obs = *freq.get(&lambda).unwrap_or(&0) as f64 / draws as f64;
            assert!((obs - p).abs() < 4.0 * sigma, "{lambda}: {obs} vs {p}");
        }
    }

    #[test]
    fn trivial_targets() {
        assert_eq!(estimate_t_density(10, 0, 1000, 3).unwrap().estimate, 1.0);
        assert_eq!(estimate_h_density(2, 8, 0, 1000, 3).unwrap().estimate, 1.0);
        assert!(estimate_t_density(4, 5, 10, 0).is_err());
        assert!(estimate_h_density(4, 4, 2, 10, 0).is_err());
    }

    #[test]
    fn estimates_agree_with_exact_counts() {
        let e = estimate_t_density(4, 2, 200_000, DEFAULT_SEED).unwrap();
        assert!((e.estimate - 10.0 / 24.0).abs() < 3.0 * e.sigma());
        let e = estimate_h_density(2, 4, 2, 200_000, DEFAULT_SEED).unwrap();
        assert!((e.estimate - 9.0 / 16.0).abs() < 3.0 * e.sigma());
        let exact = count_h(2, 20, 10).unwrap().density;
        let e = estimate_h_density(2, 20, 10, 100_000, DEFAULT_SEED).unwrap();
        assert!((e.estimate - exact).abs() < 3.0 * e.sigma());
        let t = count_t(30, 15).unwrap();
        let exact = ratio_f64(&t.count, &crate::partitions::factorial(30));
        let e = estimate_t_density(30, 15, 100_000, DEFAULT_SEED).unwrap();
        assert!((e.estimate - exact).abs() < 3.0 * e.sigma());
    }

    #[test]
    fn gcd_route_is_used_beyond_the_table() {
        // 5^12 exceeds the table limit
        let e = estimate_h_density(5, 12, 6, 20_000, 5).unwrap();
        let exact = count_h(5, 12, 6).unwrap().density;
        assert!((e.estimate - exact).abs() < 4.0 * e.sigma());
    }

    #[test]
    fn independent_of_thread_count() {
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| estimate_t_density(50, 20, 50_000, 9).unwrap())
        };
        assert_eq!(run(1), run(4));
    }

    #[test]
    fn wilson_properties() {
        for (h, t) in [(0u64, 10u64), (10, 10), (3, 10), (500, 1000), (1, 1_000_000)] {
            let (lo, hi) = wilson_interval(h, t);
            let p = h as f64 / t as f64;
            assert!(0.0 <= lo && lo <= p && p <= hi && hi <= 1.0);
        }
        let (lo, hi) = wilson_interval(0, 100);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.0);
    }
}
