//! Exact counts of `H(n,b)`, `M(2n)`, `T(n,b)` and the rough and squarefull censuses
//! (rough and squarefull polynomials), each paired with a brute-force
//! oracle.
//!
//! `F ∈ H(n,b)` iff `λ_F` has a `b`-subpartition, and `σ ∈ T(n,b)` iff
//! `λ_σ` does, so
//!
//! ```text
//! |H(n,b)| = Σ_{λ ∈ Λ(n,b)} π_q(n,λ)        |T(n,b)| = Σ_{λ ∈ Λ(n,b)} n!·P(λ)
//! ```
//!
//! Both sums stream partitions sharded by largest part; per-shard sums are
//! exact integers, so the merge is independent of the thread count.

use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::divstats;
use crate::error::{Error, Result};
use crate::gfpoly::{checked_pow, for_each_product_rank, Factorization, MonicPoly, SpfTable};
use crate::partitions::{
    bit, centralizer_of_parts, count_partitions_u64, factorial, for_each_in_shard,
    subset_sum_bits, Partition,
};
use crate::primecount::{check_prime_power, PrimeCountSeq};
use crate::series::{multichoose, one_plus_pow, rational_series};

/// Default cap on the number of partitions a single census may stream.
pub const DEFAULT_PARTITION_CAP: u64 = 25_000_000;

/// Largest `p^n` the factorization oracle will enumerate.
pub const BRUTE_FACTOR_LIMIT: u64 = 10_000_000;

/// Largest `p^n` the product-set oracle will enumerate (one bit per polynomial).
pub const BRUTE_PRODUCT_LIMIT: u64 = 400_000_000;

/// Largest `n` for which `S_n` is enumerated.
pub const BRUTE_PERM_LIMIT: u32 = 9;

/// `δ = 1 − (1 + log log 2)/log 2`.
pub fn delta() -> f64 {
    let ln2 = std::f64::consts::LN_2;
    1.0 - (1.0 + ln2.ln()) / ln2
}

/// The constants of the growth law `count ≍ total / (b^δ (log b)^{3/2})`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticParams {
    pub delta: f64,
    pub log_exponent: f64,
}

impl Default for AsymptoticParams {
    fn default() -> Self {
        AsymptoticParams {
            delta: delta(),
            log_exponent: 1.5,
        }
    }
}

impl AsymptoticParams {
    /// `δ` truncated to six decimal places, as printed in report headers.
    pub fn delta_6(&self) -> String {
        let scaled = (self.delta * 1e6).floor() / 1e6;
        format!("{scaled:.6}")
    }

    /// `b^δ (log b)^{3/2}`; `NaN` for `b < 2` where the law is not stated.
    pub fn shape(&self, b: u32) -> f64 {
        if b < 2 {
            return f64::NAN;
        }
        let b = f64::from(b);
        b.powf(self.delta) * b.ln().powf(self.log_exponent)
    }
}

/// Partition-enumeration budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub partition_cap: u64,
}

impl Default for Budget {
    fn default() -> Self {
        let cap = std::env::var("MULTAB_PARTITION_CAP")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(DEFAULT_PARTITION_CAP);
        Budget { partition_cap: cap }
    }
}

impl Budget {
    pub(crate) fn check(&self, n: u32) -> Result<()> {
        let count = count_partitions_u64(n);
        if count > self.partition_cap {
            return Err(Error::resource("partitions", format!("p({n}) = {count}"), self.partition_cap));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Kind {
    H,
    M,
    T,
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Kind::H => "H",
            Kind::M => "M",
            Kind::T => "T",
        })
    }
}

/// An exact count with its density and the growth-law comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct CountReport {
    pub kind: Kind,
    /// Field size; `None` for permutation counts.
    pub q: Option<u64>,
    pub n: u32,
    pub b: u32,
    pub count: BigUint,
    /// `count / q^n` or `count / n!`.
    pub density: f64,
    /// `total · b^{−δ} (log b)^{−3/2}`; `NaN` for `b < 2`.
    pub predicted: f64,
    /// `count / predicted`; absent for `b < 2`.
    pub ratio: Option<f64>,
}

impl CountReport {
    pub(crate) fn new(kind: Kind, q: Option<u64>, n: u32, b: u32, count: BigUint, total: BigUint) -> Self {
        let params = AsymptoticParams::default();
        let density = ratio_f64(&count, &total);
        let shape = params.shape(b);
        let total_f = total.to_f64().unwrap_or(f64::INFINITY);
        let predicted = total_f / shape;
        let ratio = (b >= 2).then(|| density * shape);
        CountReport {
            kind,
            q,
            n,
            b,
            count,
            density,
            predicted,
            ratio,
        }
    }
}

/// `num / den` rounded to the nearest `f64`.
pub fn ratio_f64(num: &BigUint, den: &BigUint) -> f64 {
    BigRational::new(num.clone().into(), den.clone().into())
        .to_f64()
        .unwrap_or(f64::NAN)
}

/// `Σ_{λ ⊢ n, λ has a b-subpartition} weight(λ)` for each `b` in `targets`.
fn partition_sums<W>(n: u32, targets: &[u32], budget: &Budget, weight: W) -> Result<Vec<BigUint>>
where
    W: Fn(&[u32]) -> Result<BigUint> + Sync,
{
    budget.check(n)?;
    if let Some(&b) = targets.iter().find(|&&b| b > n) {
        return Err(Error::InvalidArgument(format!("b = {b} exceeds n = {n}")));
    }
    let zeros = || vec![BigUint::zero(); targets.len()];
    if n == 0 {
        let w = weight(&[])?;
        return Ok(targets.iter().map(|_| w.clone()).collect());
    }
    let shard = |largest: u32| -> Result<Vec<BigUint>> {
        let mut acc = zeros();
        let mut words = Vec::new();
        let mut err = None;
        for_each_in_shard(n, largest, |parts| {
            if err.is_some() {
                return;
            }
            subset_sum_bits(parts, &mut words);
            if !targets.iter().any(|&b| bit(&words, b as usize)) {
                return;
            }
            match weight(parts) {
                Ok(w) => {
                    for (slot, &b) in acc.iter_mut().zip(targets) {
                        if bit(&words, b as usize) {
                            *slot += &w;
                        }
                    }
                }
                Err(e) => err = Some(e),
            }
        });
        err.map_or(Ok(acc), Err)
    };
    (1..=n)
        .into_par_iter()
        .map(shard)
        .try_reduce(zeros, |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            Ok(a)
        })
}

/// `|H(n,b)|` for every `b` in `targets` over `F_q`.
pub fn count_h_many(q: u64, n: u32, targets: &[u32], budget: &Budget) -> Result<Vec<BigUint>> {
    check_prime_power(q)?;
    let seq = PrimeCountSeq::new(q, n)?;
    partition_sums(n, targets, budget, |parts| seq.count_with_parts(parts))
}

/// `|H(n,b)|`: monic degree-`n` polynomials over `F_q` with a divisor of degree `b`.
pub fn count_h(q: u64, n: u32, b: u32) -> Result<CountReport> {
    count_h_with_budget(q, n, b, &Budget::default())
}

pub fn count_h_with_budget(q: u64, n: u32, b: u32, budget: &Budget) -> Result<CountReport> {
    let count = count_h_many(q, n, &[b], budget)?.remove(0);
    Ok(CountReport::new(Kind::H, Some(q), n, b, count, BigUint::from(q).pow(n)))
}

/// `|M(2n)| = |H(2n, n)|`, addressed by the total degree `2n`.
pub fn count_m(q: u64, total_degree: u32) -> Result<CountReport> {
    count_m_with_budget(q, total_degree, &Budget::default())
}

pub fn count_m_with_budget(q: u64, total_degree: u32, budget: &Budget) -> Result<CountReport> {
    if total_degree % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "M(2n) needs an even degree, got {total_degree}"
        )));
    }
    let mut r = count_h_with_budget(q, total_degree, total_degree / 2, budget)?;
    r.kind = Kind::M;
    Ok(r)
}

/// `|T(n,b)|` for every `b` in `targets`.
pub fn count_t_many(n: u32, targets: &[u32], budget: &Budget) -> Result<Vec<BigUint>> {
    let nf = factorial(n);
    partition_sums(n, targets, budget, |parts| Ok(&nf / centralizer_of_parts(parts)))
}

/// `|T(n,b)|`: permutations of `S_n` that split as disjoint `τ₁τ₂` with
/// `τ₁` embedding into `S_b`.
pub fn count_t(n: u32, b: u32) -> Result<CountReport> {
    count_t_with_budget(n, b, &Budget::default())
}

pub fn count_t_with_budget(n: u32, b: u32, budget: &Budget) -> Result<CountReport> {
    let count = count_t_many(n, &[b], budget)?.remove(0);
    Ok(CountReport::new(Kind::T, None, n, b, count, factorial(n)))
}

/// `n!·Σ_{λ ∈ Λ(n,b)} P(λ)` evaluated as a rational sum; the integer route
/// [`count_t`] must agree with it.
pub fn count_t_rational(n: u32, b: u32) -> BigRational {
    let mut acc = BigRational::zero();
    for lambda in crate::partitions::lambda_iter(n, b) {
        acc += crate::partitions::cycle_type_probability(&lambda);
    }
    acc * BigRational::from_integer(BigInt::from(factorial(n)))
}

fn check_brute_scale(p: u32, n: u32, limit: u64) -> Result<u64> {
    let size = checked_pow(u64::from(p), n as usize)
        .filter(|&s| s <= limit)
        .ok_or_else(|| Error::resource("brute-force enumeration", format!("{p}^{n}"), limit))?;
    Ok(size)
}

/// Oracle: `|H(n,b)|` for all `b ∈ 0..=n` by factoring every `F ∈ M_n`
/// with the sieve table and testing `λ_F` directly.
pub fn brute_h_census(table: &SpfTable, n: u32) -> Result<Vec<u64>> {
    let p = table.modulus();
    let size = check_brute_scale(p, n, BRUTE_FACTOR_LIMIT)?;
    let mut counts = vec![0u64; n as usize + 1];
    let mut words = Vec::new();
    for k in 0..size {
        let f = MonicPoly::unrank_unchecked(p, n as usize, k);
        let ty = table.factorization_type(&f)?;
        subset_sum_bits(ty.parts(), &mut words);
        for (b, c) in counts.iter_mut().enumerate() {
            if bit(&words, b) {
                *c += 1;
            }
        }
    }
    Ok(counts)
}

/// Oracle for a single `(p, n, b)` via [`brute_h_census`].
pub fn brute_h(p: u32, n: u32, b: u32) -> Result<BigUint> {
    if b > n {
        return Err(Error::InvalidArgument(format!("b = {b} exceeds n = {n}")));
    }
    check_brute_scale(p, n, BRUTE_FACTOR_LIMIT)?;
    let table = SpfTable::build(p, n as usize)?;
    Ok(BigUint::from(brute_h_census(&table, n)?[b as usize]))
}

/// Oracle straight from the definition `H(n,b) = {G·H : G ∈ M_b, H ∈ M_{n−b}}`:
/// forms every product and counts the distinct results. Needs no
/// factorization, only one bit per polynomial of `M_n`.
pub fn brute_h_products(p: u32, n: u32, b: u32) -> Result<BigUint> {
    if b > n {
        return Err(Error::InvalidArgument(format!("b = {b} exceeds n = {n}")));
    }
    let size = check_brute_scale(p, n, BRUTE_PRODUCT_LIMIT)?;
    let (small, large) = if b <= n - b { (b, n - b) } else { (n - b, b) };
    let pow: Vec<u64> = (0..=n).map(|i| u64::from(p).pow(i)).collect();
    let words: Vec<AtomicU64> = (0..size.div_ceil(64)).map(|_| AtomicU64::new(0)).collect();
    (0..pow[small as usize]).into_par_iter().for_each(|g| {
        let g = MonicPoly::unrank_unchecked(p, small as usize, g);
        let mut local: Vec<(usize, u64)> = Vec::new();
        let mut cur_word = usize::MAX;
        let mut cur_bits = 0u64;
        for_each_product_rank(p, g.coeffs(), large as usize, &pow, |_, r| {
            let w = (r / 64) as usize;
            if w != cur_word {
                if cur_word != usize::MAX {
                    local.push((cur_word, cur_bits));
                }
                cur_word = w;
                cur_bits = 0;
            }
            cur_bits |= 1 << (r % 64);
        });
        if cur_word != usize::MAX {
            local.push((cur_word, cur_bits));
        }
        for (w, bits) in local {
            words[w].fetch_or(bits, Ordering::Relaxed);
        }
    });
    let total: u64 = words
        .iter()
        .map(|w| u64::from(w.load(Ordering::Relaxed).count_ones()))
        .sum();
    Ok(BigUint::from(total))
}

/// Cycle type of a permutation given as an image table.
pub fn cycle_type(perm: &[usize]) -> Partition {
    let mut seen = vec![false; perm.len()];
    let mut parts = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u32;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        parts.push(len);
    }
    Partition::from_unsorted(parts).expect("cycle lengths are positive")
}

/// Oracle: `|T(n,b)|` for every `b` by enumerating `S_n` (Heap's algorithm)
/// and decomposing each permutation into disjoint cycles.
pub fn brute_t_census(n: u32) -> Result<Vec<u64>> {
    if n > BRUTE_PERM_LIMIT {
        return Err(Error::resource("permutations", format!("{n}!"), format!("{BRUTE_PERM_LIMIT}!")));
    }
    let n = n as usize;
    let mut counts = vec![0u64; n + 1];
    let mut perm: Vec<usize> = (0..n).collect();
    let mut words = Vec::new();
    let mut visit = |perm: &[usize]| {
        let ty = cycle_type(perm);
        subset_sum_bits(ty.parts(), &mut words);
        for (b, c) in counts.iter_mut().enumerate() {
            if bit(&words, b) {
                *c += 1;
            }
        }
    };
    visit(&perm);
    let mut c = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            visit(&perm);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(counts)
}

pub fn brute_t(n: u32, b: u32) -> Result<BigUint> {
    if b > n {
        return Err(Error::InvalidArgument(format!("b = {b} exceeds n = {n}")));
    }
    Ok(BigUint::from(brute_t_census(n)?[b as usize]))
}

/// Monic `F` of degree `n` all of whose prime factors have degree `≥ d`:
/// the degree-`n` coefficient of `∏_{d ≤ e ≤ n} (1 − u^e)^{−π_q(e)}`.
pub fn count_rough(q: u64, n: u32, d: u32) -> Result<BigUint> {
    if d == 0 || d > n {
        return Err(Error::InvalidArgument(format!("need 1 ≤ d ≤ n, got d={d}, n={n}")));
    }
    let seq = PrimeCountSeq::new(q, n)?;
    let len = n as usize + 1;
    let mut acc = vec![BigUint::zero(); len];
    acc[0] = BigUint::one();
    for e in d..=n {
        let pi = seq.get(e);
        let e = e as usize;
        let mut next = acc.clone();
        for j in 1..=(len - 1) / e {
            let c = multichoose(pi, j as u32);
            for i in 0..len - j * e {
                if !acc[i].is_zero() {
                    next[i + j * e] += &acc[i] * &c;
                }
            }
        }
        acc = next;
    }
    Ok(acc.pop().expect("len ≥ 1"))
}

/// `q^n ∏_{deg P < d} (1 − 1/|P|)`, the product formula for rough counts,
/// in floating point. Comparing with [`count_rough`] shows where the
/// coefficient identity breaks down at small `n`.
pub fn rough_product_formula(q: u64, n: u32, d: u32) -> Result<f64> {
    check_prime_power(q)?;
    let seq = PrimeCountSeq::new(q, d.saturating_sub(1))?;
    let qf = q as f64;
    let mut log = f64::from(n) * qf.ln();
    for e in 1..d {
        let pi = seq.get(e).to_f64().unwrap_or(f64::INFINITY);
        log += pi * (-qf.powi(-(e as i32))).ln_1p();
    }
    Ok(log.exp())
}

/// Oracle: for `d ∈ 0..=n`, how many `F ∈ M_n` have all prime factors of degree `≥ d`.
pub fn brute_rough_census(table: &SpfTable, n: u32) -> Result<Vec<u64>> {
    let p = table.modulus();
    let size = check_brute_scale(p, n, BRUTE_FACTOR_LIMIT)?;
    let mut by_min = vec![0u64; n as usize + 2];
    for k in 0..size {
        let f = MonicPoly::unrank_unchecked(p, n as usize, k);
        let ty = table.factorization_type(&f)?;
        let min = ty.parts().last().copied().unwrap_or(n + 1) as usize;
        by_min[min] += 1;
    }
    // at least d ⇔ suffix sum
    let mut out = vec![0u64; n as usize + 1];
    let mut acc = by_min[n as usize + 1];
    for d in (0..=n as usize).rev() {
        acc += by_min[d];
        out[d] = acc;
    }
    Ok(out)
}

/// Squarefull monic polynomials of degree `n`: the coefficients of
/// `(1 − q u^6) / ((1 − q u^2)(1 − q u^3))`.
pub fn squarefull_counts(q: u64, max_degree: u32) -> Result<Vec<BigUint>> {
    check_prime_power(q)?;
    let q = BigInt::from(q);
    let num = [BigInt::one(), 0.into(), 0.into(), 0.into(), 0.into(), 0.into(), -q.clone()];
    let den = [
        BigInt::one(),
        0.into(),
        -q.clone(),
        -q.clone(),
        0.into(),
        &q * &q,
    ];
    Ok(rational_series(&num, &den, max_degree as usize + 1)
        .into_iter()
        .map(|c| c.to_biguint().expect("squarefull counts are nonnegative"))
        .collect())
}

pub fn count_squarefull(q: u64, n: u32) -> Result<BigUint> {
    Ok(squarefull_counts(q, n)?.pop().expect("non-empty"))
}

/// Squarefull counts by the Euler product `∏_e (1 + u^{2e} + u^{3e} + …)^{π_q(e)}`,
/// an independent route to [`squarefull_counts`].
pub fn squarefull_counts_euler(q: u64, max_degree: u32) -> Result<Vec<BigUint>> {
    euler_product(q, max_degree, |_k| BigUint::one())
}

/// `Σ_{F squarefull, deg F ≤ D} τ(F)/|F|`, exactly. Each prime contributes
/// `1 + Σ_{k≥2} (k+1) u^{k·deg P}`.
pub fn squarefull_tau_sum(q: u64, max_degree: u32) -> Result<BigRational> {
    let coeffs = euler_product(q, max_degree, |k| BigUint::from(k + 1))?;
    Ok(evaluate_at_inverse_q(&coeffs, q))
}

fn euler_product(q: u64, max_degree: u32, weight: impl Fn(u32) -> BigUint) -> Result<Vec<BigUint>> {
    let seq = PrimeCountSeq::new(q, max_degree)?;
    let len = max_degree as usize + 1;
    let mut acc = vec![BigUint::zero(); len];
    acc[0] = BigUint::one();
    for e in 1..=max_degree / 2 {
        let mut h = vec![BigUint::zero(); len];
        let mut k = 2u32;
        while (k * e) as usize <= max_degree as usize {
            h[(k * e) as usize] = weight(k);
            k += 1;
        }
        let factor = one_plus_pow(&h, seq.get(e), len);
        acc = crate::series::mul_trunc(&acc, &factor, len);
    }
    Ok(acc)
}

fn evaluate_at_inverse_q(coeffs: &[BigUint], q: u64) -> BigRational {
    let n = coeffs.len().saturating_sub(1) as u32;
    let qb = BigUint::from(q);
    let num: BigUint = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| c * qb.pow(n - i as u32))
        .sum();
    BigRational::new(num.into(), qb.pow(n).into())
}

/// Oracle: squarefull polynomials of degree `n` counted by factoring.
pub fn brute_squarefull(table: &SpfTable, n: u32) -> Result<u64> {
    let p = table.modulus();
    let size = check_brute_scale(p, n, BRUTE_FACTOR_LIMIT)?;
    let mut count = 0;
    for k in 0..size {
        let f = MonicPoly::unrank_unchecked(p, n as usize, k);
        if table.factorize(&f)?.is_squarefull() {
            count += 1;
        }
    }
    Ok(count)
}

/// Bounds on `Σ_{F squarefull, deg F ≥ C} 1/|F|`.
#[derive(Debug, Clone, PartialEq)]
pub struct SquarefullTail {
    pub q: u64,
    pub c: u32,
    /// Exact sum over `C ≤ deg F < C + terms`: a lower bound.
    pub exact_part: BigRational,
    /// Upper bound for the whole tail: the exact part plus
    /// `Σ_{n ≥ C+terms} (n/3 + 1) q^{−n/2}`, using
    /// `#squarefull of degree n ≤ #{(A,B) : deg A²B³ = n} ≤ (n/3+1) q^{n/2}`.
    pub upper: f64,
}

pub fn squarefull_tail(q: u64, c: u32, terms: u32) -> Result<SquarefullTail> {
    let end = c + terms;
    let counts = squarefull_counts(q, end)?;
    let qb = BigUint::from(q);
    let mut num = BigUint::zero();
    for n in c..end {
        num += &counts[n as usize] * qb.pow(end - n);
    }
    let exact_part = BigRational::new(num.into(), qb.pow(end).into());
    let r = (q as f64).powf(-0.5);
    let nf = f64::from(end);
    let geometric = r.powf(nf) * ((nf / 3.0 + 1.0) / (1.0 - r) + (r / 3.0) / (1.0 - r).powi(2));
    let upper = (exact_part.to_f64().unwrap_or(f64::INFINITY).next_up() + geometric).next_up();
    Ok(SquarefullTail {
        q,
        c,
        exact_part,
        upper,
    })
}

/// Largest normalized discrepancy `|π_q(n,λ) − P(λ) q^n| / q^{n−1}` over `λ ⊢ n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Discrepancy {
    pub q: u64,
    pub n: u32,
    pub max: BigRational,
    pub argmax: Partition,
}

pub fn type_discrepancy(q: u64, n: u32) -> Result<Discrepancy> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be ≥ 1".into()));
    }
    let seq = PrimeCountSeq::new(q, n)?;
    let qn = BigInt::from(q).pow(n);
    let qn1 = BigInt::from(q).pow(n - 1);
    let mut best: Option<(BigRational, Partition)> = None;
    for lambda in crate::partitions::enumerate_partitions(n) {
        let z = BigInt::from(crate::partitions::centralizer_order(&lambda));
        let pi = BigInt::from(seq.count_with_type(&lambda)?);
        let d = BigRational::new((&z * pi - &qn).abs(), &z * &qn1);
        if best.as_ref().is_none_or(|(m, _)| d > *m) {
            best = Some((d, lambda));
        }
    }
    let (max, argmax) = best.expect("n ≥ 1 has partitions");
    Ok(Discrepancy { q, n, max, argmax })
}

/// `(τ(F), (τ_d(F))_{d=0..deg F})`.
pub fn tau_and_divisor_profile(f: &Factorization) -> (BigUint, Vec<BigUint>) {
    let tau_d = divstats::divisor_degree_counts(&f.degree_multiplicities());
    let tau = tau_d.iter().sum();
    (tau, tau_d)
}

/// `|H(n,b)| / ((q^n/b²) Σ_{deg A ≤ b/8} L(A)/|A|)`: the normalized
/// lower-bound inequality for divisor clustering.
pub fn clustering_lower_bound_ratio(q: u64, n: u32, b: u32) -> Result<f64> {
    if b == 0 {
        return Err(Error::InvalidArgument("b must be ≥ 1".into()));
    }
    let h = count_h(q, n, b)?;
    let l_sum = divstats::sum_l_all(q, b / 8)?;
    let l = l_sum.to_f64().unwrap_or(f64::NAN);
    Ok(h.density * f64::from(b).powi(2) / l)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn delta_value() {
        let p = AsymptoticParams::default();
        assert_eq!(p.delta_6(), "0.086071");
        assert!((p.delta - 0.086_071).abs() < 1e-6);
    }

    #[test]
    fn h_examples() {
        assert_eq!(count_h(2, 2, 1).unwrap().count, big(3));
        assert_eq!(count_h(2, 4, 2).unwrap().count, big(9));
        for q in [2u64, 3, 4, 5] {
            for n in 0..6 {
                assert_eq!(count_h(q, n, 0).unwrap().count, BigUint::from(q).pow(n));
            }
        }
        assert!(count_h(2, 3, 4).is_err());
        assert!(count_h(6, 3, 1).is_err());
    }

    #[test]
    fn m_examples() {
        assert_eq!(count_m(2, 2).unwrap().count, big(3));
        assert_eq!(count_m(2, 4).unwrap().count, big(9));
        assert_eq!(count_m(2, 0).unwrap().count, big(1));
        assert!(count_m(2, 3).is_err());
    }

    #[test]
    fn t_examples() {
        assert_eq!(count_t(2, 1).unwrap().count, big(1));
        assert_eq!(count_t(4, 2).unwrap().count, big(10));
        assert_eq!(count_t(3, 0).unwrap().count, big(6));
    }

    #[test]
    fn integer_and_rational_t_routes_agree() {
        for n in 0..=14u32 {
            for b in 0..=n {
                let int = count_t(n, b).unwrap().count;
                assert_eq!(
                    count_t_rational(n, b),
                    BigRational::from_integer(BigInt::from(int))
                );
            }
        }
    }

    #[test]
    fn brute_examples() {
        assert_eq!(brute_h(2, 2, 1).unwrap(), big(3));
        assert_eq!(brute_h(3, 2, 1).unwrap(), big(6));
        assert_eq!(brute_h(3, 4, 4).unwrap(), big(81));
        assert_eq!(brute_t(2, 1).unwrap(), big(1));
        assert_eq!(brute_t(4, 2).unwrap(), big(10));
        assert_eq!(brute_t(3, 0).unwrap(), big(6));
        assert!(brute_t(10, 1).is_err());
        assert!(brute_h(5, 11, 1).is_err());
    }

    #[test]
    fn product_oracle_matches_factor_oracle() {
        for (p, n) in [(2u32, 10u32), (3, 7), (5, 5)] {
            let table = SpfTable::build(p, n as usize).unwrap();
            let census = brute_h_census(&table, n).unwrap();
            for b in 0..=n {
                assert_eq!(brute_h_products(p, n, b).unwrap(), big(census[b as usize]));
            }
        }
    }

    #[test]
    fn counts_match_brute_force_small() {
        for (p, max_n) in [(2u32, 12u32), (3, 8), (5, 6)] {
            let table = SpfTable::build(p, max_n as usize).unwrap();
            for n in 0..=max_n {
                let census = brute_h_census(&table, n).unwrap();
                let all: Vec<u32> = (0..=n).collect();
                let exact = count_h_many(u64::from(p), n, &all, &Budget::default()).unwrap();
                for b in 0..=n as usize {
                    assert_eq!(exact[b], big(census[b]), "p={p} n={n} b={b}");
                }
            }
        }
    }

    #[test]
    fn symmetry_and_bounds() {
        for q in [2u64, 3, 4, 7] {
            for n in 0..=14u32 {
                let all: Vec<u32> = (0..=n).collect();
                let h = count_h_many(q, n, &all, &Budget::default()).unwrap();
                let total = BigUint::from(q).pow(n);
                for b in 0..=n as usize {
                    assert_eq!(h[b], h[n as usize - b]);
                    assert!(h[b] <= total);
                }
            }
        }
        for n in 0..=20u32 {
            let all: Vec<u32> = (0..=n).collect();
            let t = count_t_many(n, &all, &Budget::default()).unwrap();
            for b in 0..=n as usize {
                assert_eq!(t[b], t[n as usize - b]);
                assert!(t[b] <= factorial(n));
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let tight = Budget { partition_cap: 100 };
        assert!(matches!(
            count_t_with_budget(30, 3, &tight),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn report_fields() {
        let r = count_h(2, 4, 2).unwrap();
        assert_eq!(r.density, 9.0 / 16.0);
        let shape = AsymptoticParams::default().shape(2);
        assert!((r.ratio.unwrap() - 9.0 / 16.0 * shape).abs() < 1e-12);
        assert!((r.predicted - 16.0 / shape).abs() < 1e-12);
        let r = count_h(2, 4, 1).unwrap();
        assert!(r.predicted.is_nan());
        assert_eq!(r.ratio, None);
    }

    #[test]
    fn rough_examples() {
        assert_eq!(count_rough(2, 3, 2).unwrap(), big(2));
        for q in [2u64, 3, 4] {
            for n in 1..=8u32 {
                assert_eq!(count_rough(q, n, 1).unwrap(), BigUint::from(q).pow(n));
                assert_eq!(
                    count_rough(q, n, n).unwrap(),
                    crate::primecount::prime_poly_count(q, n).unwrap()
                );
            }
        }
        assert!(count_rough(2, 3, 0).is_err());
        assert!(count_rough(2, 3, 4).is_err());
    }

    #[test]
    fn rough_ratio_is_bounded() {
        // Measured over q ∈ {2,3,5}, n ≤ 30, d ≤ n: d·count/q^n ∈ [0.50, 1.00],
        // with 1 attained at d = 1.
        for q in [2u64, 3, 5] {
            for n in 1..=30u32 {
                let qn = BigUint::from(q).pow(n);
                for d in 1..=n {
                    let c = count_rough(q, n, d).unwrap();
                    let r = f64::from(d) * ratio_f64(&c, &qn);
                    assert!((0.49..=1.0).contains(&r), "q={q} n={n} d={d} r={r}");
                }
            }
        }
    }

    #[test]
    fn squarefull_examples() {
        assert_eq!(count_squarefull(2, 0).unwrap(), big(1));
        assert_eq!(count_squarefull(2, 1).unwrap(), big(0));
        assert_eq!(count_squarefull(2, 5).unwrap(), big(4));
        // P^4 (3 ways), P^2 Q^2 with distinct linear P, Q (3), R^2 with R an
        // irreducible quadratic (3).
        assert_eq!(count_squarefull(3, 4).unwrap(), big(9));
    }

    #[test]
    fn squarefull_routes_agree() {
        for q in [2u64, 3, 4, 5, 7] {
            assert_eq!(
                squarefull_counts(q, 40).unwrap(),
                squarefull_counts_euler(q, 40).unwrap()
            );
        }
    }

    #[test]
    fn squarefull_tail_bound_is_valid() {
        for q in [2u64, 3] {
            let short = squarefull_tail(q, 5, 20).unwrap();
            let long = squarefull_tail(q, 5, 200).unwrap();
            assert!(short.exact_part <= long.exact_part);
            assert!(long.exact_part.to_f64().unwrap() <= short.upper);
        }
    }

    #[test]
    fn discrepancy_examples() {
        for q in [2u64, 3, 4, 5, 7] {
            let d = type_discrepancy(q, 1).unwrap();
            assert!(d.max.is_zero());
        }
        let d = type_discrepancy(2, 2).unwrap();
        assert_eq!(d.max, BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn discrepancy_is_bounded_in_q() {
        // Measured sup over all prime powers q ≤ 1024 is attained at q = 2:
        // c(2..=8) = 0.5, 0.667, 0.542, 0.358, 0.216, 0.156, 0.121.
        let frozen = [0.0, 0.0, 0.5, 0.667, 0.542, 0.359, 0.217, 0.157, 0.121];
        for &q in &crate::primecount::prime_powers_up_to(1024) {
            for n in 1..=8u32 {
                let d = type_discrepancy(q, n).unwrap().max.to_f64().unwrap();
                assert!(d <= frozen[n as usize] + 1e-3, "q={q} n={n} {d}");
            }
        }
    }

    #[test]
    fn clustering_lower_bound_ratio_stays_away_from_zero() {
        // Measured minimum 5.54 (q=5, n=8, b=4), maximum 21.3 (b = n = 8).
        for q in [2u64, 3, 5] {
            for n in [8u32, 12, 16, 20] {
                for b in [8, n / 2] {
                    let r = clustering_lower_bound_ratio(q, n, b).unwrap();
                    assert!((5.0..=22.0).contains(&r), "q={q} n={n} b={b} {r}");
                }
            }
        }
    }

    #[test]
    fn cycle_types() {
        assert_eq!(cycle_type(&[0, 1, 2]).to_string(), "1,1,1");
        assert_eq!(cycle_type(&[1, 2, 0, 4, 3]).to_string(), "3,2");
    }

    #[test]
    fn tau_profile_examples() {
        let t = SpfTable::build(2, 4).unwrap();
        let prime = MonicPoly::new(2, vec![1, 1]).unwrap();
        let (tau, prof) = tau_and_divisor_profile(&t.factorize(&prime).unwrap());
        assert_eq!(tau, big(2));
        assert_eq!(prof, [big(1), big(0), big(1)]);
        let f = MonicPoly::new(2, vec![0, 1]).unwrap(); // x(x+1)
        let (tau, prof) = tau_and_divisor_profile(&t.factorize(&f).unwrap());
        assert_eq!(tau, big(4));
        assert_eq!(prof, [big(1), big(2), big(1)]);
        let f = MonicPoly::new(2, vec![0, 0]).unwrap(); // x^2
        let (_, prof) = tau_and_divisor_profile(&t.factorize(&f).unwrap());
        assert_eq!(prof[1], big(1));
    }
}
