//! Exact counts of prime polynomials over `F_q` (any prime power `q`) and
//! aggregates over prime degrees.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::partitions::{multiplicities, Partition};
use crate::series::multichoose;

/// `Some((p, k))` with `q = p^k`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q {
        if q % p == 0 {
            break;
        }
        p += 1;
    }
    if p * p > q {
        return Some((q, 1));
    }
    let (mut r, mut k) = (q, 0u32);
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

pub(crate) fn check_prime_power(q: u64) -> Result<()> {
    prime_power(q).map(|_| ()).ok_or(Error::NotPrimePower(q))
}

/// All prime powers in `[2, max]`.
pub fn prime_powers_up_to(max: u64) -> Vec<u64> {
    (2..=max).filter(|&q| prime_power(q).is_some()).collect()
}

/// The integer Möbius function.
pub fn mobius(mut n: u64) -> i8 {
    if n == 0 {
        return 0;
    }
    let mut sign = 1i8;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).take_while(|d| d * d <= n).filter(|d| n % d == 0).collect();
    let upper: Vec<u64> = out.iter().rev().map(|d| n / d).filter(|&e| e * e != n).collect();
    out.extend(upper);
    out
}

/// `π_q(d)`: monic irreducibles of degree `d` over `F_q`, by the Möbius
/// inversion of `Σ_{e|d} e·π_q(e) = q^d`.
pub fn prime_poly_count(q: u64, d: u32) -> Result<BigUint> {
    check_prime_power(q)?;
    if d == 0 {
        return Err(Error::InvalidArgument("prime degree must be ≥ 1".into()));
    }
    Ok(gauss_count(q, d))
}

fn gauss_count(q: u64, d: u32) -> BigUint {
    let qb = BigInt::from(q);
    let mut acc = BigInt::zero();
    for e in divisors(u64::from(d)) {
        let mu = mobius(e);
        if mu == 0 {
            continue;
        }
        let term = qb.pow(d / e as u32);
        if mu > 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    (acc / BigInt::from(d))
        .to_biguint()
        .expect("prime counts are nonnegative")
}

/// `π_q(1..=max_degree)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeCountSeq {
    q: u64,
    counts: Vec<BigUint>,
}

impl PrimeCountSeq {
    pub fn new(q: u64, max_degree: u32) -> Result<Self> {
        check_prime_power(q)?;
        let mut counts = vec![BigUint::zero()];
        counts.extend((1..=max_degree).map(|d| gauss_count(q, d)));
        Ok(PrimeCountSeq { q, counts })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn max_degree(&self) -> u32 {
        (self.counts.len() - 1) as u32
    }

    /// `π_q(d)`; degree 0 and degrees beyond the table give 0.
    pub fn get(&self, d: u32) -> &BigUint {
        static ZERO: std::sync::OnceLock<BigUint> = std::sync::OnceLock::new();
        self.counts
            .get(d as usize)
            .filter(|_| d > 0)
            .unwrap_or_else(|| ZERO.get_or_init(BigUint::zero))
    }

    /// `π_q(n, λ) = ∏_d multichoose(π_q(d), m_d)`.
    pub fn count_with_type(&self, lambda: &Partition) -> Result<BigUint> {
        self.count_with_parts(lambda.parts())
    }

    /// [`count_with_type`](Self::count_with_type) with a caller-supplied
    /// multiset coefficient; lets a self-test confirm that a faulty one is caught.
    pub fn count_with_type_using(
        &self,
        lambda: &Partition,
        choose: impl Fn(&BigUint, u32) -> BigUint,
    ) -> Result<BigUint> {
        self.count_parts_using(lambda.parts(), choose)
    }

    pub(crate) fn count_with_parts(&self, parts: &[u32]) -> Result<BigUint> {
        self.count_parts_using(parts, multichoose)
    }

    fn count_parts_using(&self, parts: &[u32], choose: impl Fn(&BigUint, u32) -> BigUint) -> Result<BigUint> {
        let mut acc = BigUint::one();
        for (d, m) in multiplicities(parts) {
            if d > self.max_degree() {
                return Err(Error::OutOfRange(format!(
                    "part {d} beyond prime-count table ({})",
                    self.max_degree()
                )));
            }
            acc *= choose(self.get(d), m);
        }
        Ok(acc)
    }

    /// Squarefree analogue: `∏_d C(π_q(d), m_d)` (distinct primes).
    pub(crate) fn count_squarefree_with_parts(&self, parts: &[u32]) -> BigUint {
        let mut acc = BigUint::one();
        for (d, m) in multiplicities(parts) {
            acc *= crate::series::binomial(self.get(d), m);
            if acc.is_zero() {
                break;
            }
        }
        acc
    }
}

/// `π_q(n, λ)`: monic `F` of degree `|λ|` with factorization type `λ`.
pub fn count_with_type(q: u64, lambda: &Partition) -> Result<BigUint> {
    let max = lambda.largest().unwrap_or(0);
    PrimeCountSeq::new(q, max)?.count_with_type(lambda)
}

/// `Σ_{d1 ≤ deg P ≤ d2} 1/|P| = Σ_d π_q(d)/q^d`, exactly.
pub fn inverse_prime_sum(q: u64, d1: u32, d2: u32) -> Result<BigRational> {
    check_prime_power(q)?;
    if d1 == 0 || d1 > d2 {
        return Err(Error::InvalidArgument(format!("need 1 ≤ d1 ≤ d2, got {d1}, {d2}")));
    }
    let seq = PrimeCountSeq::new(q, d2)?;
    let qb = BigUint::from(q);
    let mut num = BigUint::zero();
    for d in d1..=d2 {
        num += seq.get(d) * qb.pow(d2 - d);
    }
    Ok(BigRational::new(num.into(), qb.pow(d2).into()))
}

/// `π_q(e)/q^e` in floating point: `(1/e)·Σ_{k|e} μ(k) q^{e/k − e}`.
pub fn prime_density(q: u64, e: u32) -> f64 {
    let lq = (q as f64).ln();
    let ef = f64::from(e);
    let s: f64 = divisors(u64::from(e))
        .into_iter()
        .map(|k| {
            let mu = mobius(k);
            if mu == 0 {
                return 0.0;
            }
            let x = (ef / k as f64 - ef) * lq;
            f64::from(mu) * x.exp()
        })
        .sum();
    s / ef
}

/// `Σ_{deg P ≤ d} |P|^{−(1 − 1/(d log q))}`, aggregated per degree as
/// `Σ_e (π_q(e)/q^e)·e^{e/d}`. Relative error below `1e-12`.
pub fn tempered_prime_sum(q: u64, d: u32) -> Result<f64> {
    check_prime_power(q)?;
    if d == 0 {
        return Err(Error::InvalidArgument("d must be ≥ 1".into()));
    }
    let df = f64::from(d);
    Ok((1..=d)
        .map(|e| prime_density(q, e) * (f64::from(e) / df).exp())
        .sum())
}

/// One block `D_j` of prime degrees `start..=end`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeInterval {
    pub start: u32,
    pub end: u32,
    /// Enclosure of `Σ_{start ≤ deg P ≤ end} 1/|P|`.
    pub mass: Interval,
    /// Set when the single forced degree already exceeds `log 2`.
    pub overflow: bool,
}

/// Consecutive prime-degree blocks of inverse-norm mass at most `log 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeIntervals {
    q: u64,
    intervals: Vec<DegreeInterval>,
}

/// Degrees up to which per-degree masses are enclosed from exact rationals.
const EXACT_DENSITY_LIMIT: u32 = 128;

fn density_interval(q: u64, e: u32) -> Interval {
    if e <= EXACT_DENSITY_LIMIT {
        let num = gauss_count(q, e);
        let den = BigUint::from(q).pow(e);
        Interval::from_rational(&BigRational::new(num.into(), den.into()))
    } else {
        // |π_q(e)/q^e − 1/e| ≤ τ(e)·q^{−e/2}/e < 2^{−56}/e here.
        Interval::around(1.0 / f64::from(e), 2f64.powi(-50))
    }
}

fn ln2_rational_bracket(terms: u32) -> (BigRational, BigRational) {
    let mut lo = BigRational::zero();
    for k in 1..=terms {
        lo += BigRational::new(BigInt::one(), BigInt::from(k) * (BigInt::one() << k));
    }
    let tail = BigRational::new(BigInt::one(), BigInt::from(terms + 1) * (BigInt::one() << terms));
    let hi = &lo + tail;
    (lo, hi)
}

impl DegreeIntervals {
    /// Greedy construction of the first `j_max` blocks.
    ///
    /// Each block starts right after the previous one and always contains
    /// its first degree; it then extends while the mass stays `≤ log 2`.
    pub fn build(q: u64, j_max: usize) -> Result<Self> {
        check_prime_power(q)?;
        if j_max == 0 {
            return Err(Error::InvalidArgument("need at least one interval".into()));
        }
        let ln2 = Interval::ln2();
        let mut intervals = Vec::with_capacity(j_max);
        let mut start = 1u32;
        for _ in 0..j_max {
            let mut mass = density_interval(q, start);
            let mut end = start;
            let overflow = !Self::decide_le_ln2(q, start, end, &mass, &ln2)?;
            if !overflow {
                loop {
                    let cand = mass + density_interval(q, end + 1);
                    if Self::decide_le_ln2(q, start, end + 1, &cand, &ln2)? {
                        mass = cand;
                        end += 1;
                    } else {
                        break;
                    }
                }
            }
            intervals.push(DegreeInterval {
                start,
                end,
                mass,
                overflow,
            });
            start = end + 1;
        }
        Ok(DegreeIntervals { q, intervals })
    }

    fn decide_le_ln2(q: u64, start: u32, end: u32, mass: &Interval, ln2: &Interval) -> Result<bool> {
        if let Some(ans) = mass.le(ln2) {
            return Ok(ans);
        }
        if end > EXACT_DENSITY_LIMIT {
            return Err(Error::Undecidable);
        }
        let exact = inverse_prime_sum(q, start, end)?;
        let (lo, hi) = ln2_rational_bracket(256);
        if exact <= lo {
            Ok(true)
        } else if exact > hi {
            Ok(false)
        } else {
            Err(Error::Undecidable)
        }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn intervals(&self) -> &[DegreeInterval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// `λ_0 = 0, λ_1, …, λ_J`.
    pub fn boundaries(&self) -> Vec<u32> {
        std::iter::once(0)
            .chain(self.intervals.iter().map(|i| i.end))
            .collect()
    }

    /// `λ_j` for `1 ≤ j ≤ J` (and `λ_0 = 0`).
    pub fn boundary(&self, j: usize) -> Option<u32> {
        if j == 0 {
            Some(0)
        } else {
            self.intervals.get(j - 1).map(|i| i.end)
        }
    }

    /// Exact rational mass of block `j` (1-based).
    pub fn exact_mass(&self, j: usize) -> Result<BigRational> {
        let iv = self
            .intervals
            .get(j.wrapping_sub(1))
            .ok_or_else(|| Error::OutOfRange(format!("interval {j}")))?;
        inverse_prime_sum(self.q, iv.start, iv.end)
    }

    /// `max_j |log₂(λ_j) − j|`: the smallest `K` with
    /// `2^{j−K} ≤ λ_j ≤ 2^{j+K}` over the built blocks.
    pub fn growth_constant(&self) -> f64 {
        self.intervals
            .iter()
            .enumerate()
            .map(|(i, iv)| (f64::from(iv.end).log2() - (i + 1) as f64).abs())
            .fold(0.0, f64::max)
    }
}

pub fn build_degree_intervals(q: u64, j_max: usize) -> Result<DegreeIntervals> {
    DegreeIntervals::build(q, j_max)
}

/// `|π_q(d) − q^d/d| · d / q^{d/2}`, the normalized prime polynomial
/// theorem error.
pub fn normalized_ppt_error(q: u64, d: u32) -> Result<f64> {
    let pi = BigInt::from(prime_poly_count(q, d)?);
    let qd = BigInt::from(q).pow(d);
    let diff = (BigInt::from(d) * pi - qd).abs();
    let diff = diff.to_f64().unwrap_or(f64::INFINITY);
    Ok(diff / (q as f64).powf(f64::from(d) / 2.0))
}
