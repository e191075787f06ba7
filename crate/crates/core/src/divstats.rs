//! Divisor-clustering statistics of monic polynomials.
//!
//! For `A` monic, `Ll(A)` is the set of degrees of divisors of `A` (it
//! contains 0 and `deg A`), `L(A) = |Ll(A)|`, `τ_d(A)` counts divisors of
//! degree `d` and `W(A) = Σ_d τ_d(A)²` counts ordered pairs of divisors of
//! equal degree. All of these depend only on the multiset of prime degrees
//! and multiplicities, so sums over squarefree `A` collapse to sums over
//! degree multisets weighted by `∏_e C(π_q(e), m_e)`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::census::Budget;
use crate::error::{Error, Result};
use crate::gfpoly::Factorization;
use crate::partitions::{factorial, multiplicities, Partitions};
use crate::primecount::{DegreeIntervals, PrimeCountSeq};

/// Largest total degree accepted by the squarefree sums.
pub const MAX_SQUAREFREE_DEGREE: u32 = 48;

/// `τ_d` for `d = 0..=deg A`, where `A` has distinct primes of the given
/// `(degree, multiplicity)` pairs: the coefficients of `∏ (1 + u^e + … + u^{me})`.
pub fn divisor_degree_counts(primes: &[(u32, u32)]) -> Vec<BigUint> {
    let n: usize = primes.iter().map(|&(e, m)| (e * m) as usize).sum();
    let mut counts = vec![BigUint::zero(); n + 1];
    counts[0] = BigUint::one();
    let mut top = 0usize;
    for &(e, m) in primes {
        let e = e as usize;
        let mut next = counts.clone();
        for k in 1..=m as usize {
            for d in 0..=top {
                if !counts[d].is_zero() {
                    next[d + k * e] += &counts[d];
                }
            }
        }
        counts = next;
        top += e * m as usize;
    }
    counts
}

/// `Ll`, `L`, `τ_d`, `τ` and `W` of one polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClustering {
    degree: u32,
    ll: Vec<u64>,
    tau_d: Vec<BigUint>,
    l: u32,
    tau: BigUint,
    w: BigUint,
}

impl DivisorClustering {
    /// From distinct primes given as `(degree, multiplicity)`.
    pub fn from_prime_degrees(primes: &[(u32, u32)]) -> Self {
        let tau_d = divisor_degree_counts(primes);
        let degree = (tau_d.len() - 1) as u32;
        let mut ll = vec![0u64; tau_d.len().div_ceil(64)];
        let mut l = 0;
        for (d, c) in tau_d.iter().enumerate() {
            if !c.is_zero() {
                ll[d / 64] |= 1 << (d % 64);
                l += 1;
            }
        }
        let tau = tau_d.iter().sum();
        let w = tau_d.iter().map(|c| c * c).sum();
        DivisorClustering {
            degree,
            ll,
            tau_d,
            l,
            tau,
            w,
        }
    }

    /// Squarefree `A` with prime degrees `degrees` (one entry per prime).
    pub fn squarefree(degrees: &[u32]) -> Self {
        let primes: Vec<(u32, u32)> = degrees.iter().map(|&e| (e, 1)).collect();
        Self::from_prime_degrees(&primes)
    }

    pub fn from_factorization(f: &Factorization) -> Self {
        Self::from_prime_degrees(&f.degree_multiplicities())
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn contains(&self, d: u32) -> bool {
        crate::partitions::bit(&self.ll, d as usize)
    }

    /// Elements of `Ll(A)` in increasing order.
    pub fn degrees(&self) -> impl Iterator<Item = u32> + '_ {
        (0..=self.degree).filter(|&d| self.contains(d))
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn tau(&self) -> &BigUint {
        &self.tau
    }

    pub fn tau_d(&self) -> &[BigUint] {
        &self.tau_d
    }

    pub fn w(&self) -> &BigUint {
        &self.w
    }
}

pub fn clustering(primes: &[(u32, u32)]) -> DivisorClustering {
    DivisorClustering::from_prime_degrees(primes)
}

/// Outcome of checking the three bounds on `L`:
///
/// 1. `L(A) ≤ min(τ(A), deg A + 1)`;
/// 2. `L(AB) ≤ τ(B) L(A)` for every split into coprime `A`, `B`;
/// 3. `L(P_1⋯P_k) ≤ min_j 2^{k−j} (deg(P_1⋯P_j) + 1)` with the primes in
///    increasing degree and counted with multiplicity.
///
/// The `+ 1` accounts for `0 ∈ Ll(A)`; without it `A = 1`, every linear prime
/// and `x(x+1)` already fail the first bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LBoundsReport {
    pub l: u32,
    pub degree: u32,
    /// `deg A + 1` when repaired, `deg A` otherwise.
    pub degree_term: u32,
    pub bound1: bool,
    /// A violating split, as a bitmask over the distinct primes placed in `B`.
    pub bound2_witness: Option<u64>,
    /// A violating prefix length `j`.
    pub bound3_witness: Option<usize>,
}

impl LBoundsReport {
    pub fn passed(&self) -> bool {
        self.bound1 && self.bound2_witness.is_none() && self.bound3_witness.is_none()
    }
}

/// Largest number of distinct primes for which every coprime split is tried.
const MAX_SPLIT_PRIMES: usize = 16;

pub fn check_l_bounds(f: &Factorization) -> LBoundsReport {
    check_l_bounds_for(&f.degree_multiplicities(), true)
}

/// [`check_l_bounds`] on `(degree, multiplicity)` pairs; `repair = false`
/// uses `deg A` in place of `deg A + 1`.
pub fn check_l_bounds_for(primes: &[(u32, u32)], repair: bool) -> LBoundsReport {
    let whole = DivisorClustering::from_prime_degrees(primes);
    let plus = u32::from(repair);
    let degree = whole.degree;
    let l = whole.l;
    let bound1 = BigUint::from(l) <= whole.tau && l <= degree + plus;

    let mut bound2_witness = None;
    if primes.len() <= MAX_SPLIT_PRIMES {
        for mask in 0u64..1 << primes.len() {
            let (b, a): (Vec<_>, Vec<_>) = primes
                .iter()
                .enumerate()
                .partition(|(i, _)| mask >> i & 1 == 1);
            let a: Vec<(u32, u32)> = a.into_iter().map(|(_, &x)| x).collect();
            let tau_b: u64 = b.iter().map(|(_, &(_, m))| u64::from(m) + 1).product();
            let l_a = DivisorClustering::from_prime_degrees(&a).l;
            if u64::from(l) > tau_b * u64::from(l_a) {
                bound2_witness = Some(mask);
                break;
            }
        }
    }

    let mut seq: Vec<u32> = primes
        .iter()
        .flat_map(|&(e, m)| std::iter::repeat_n(e, m as usize))
        .collect();
    seq.sort_unstable();
    let mut bound3_witness = None;
    let mut prefix_degree = 0u64;
    for j in 0..=seq.len() {
        if j > 0 {
            prefix_degree += u64::from(seq[j - 1]);
        }
        let pow = 1u128 << (seq.len() - j).min(64);
        let bound = pow.saturating_mul(u128::from(prefix_degree + u64::from(plus)));
        if u128::from(l) > bound {
            bound3_witness = Some(j);
            break;
        }
    }

    LBoundsReport {
        l,
        degree,
        degree_term: degree + plus,
        bound1,
        bound2_witness,
        bound3_witness,
    }
}

/// Which squarefree `A` a sum runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SquarefreeConstraints {
    /// Every prime factor has degree `≤ max_prime_degree`.
    pub max_prime_degree: u32,
    /// `deg A ≥ min_total_degree`.
    pub min_total_degree: u32,
    /// `ω(A) = k` when set.
    pub exact_prime_count: Option<u32>,
}

impl SquarefreeConstraints {
    pub fn unconstrained(max_prime_degree: u32) -> Self {
        SquarefreeConstraints {
            max_prime_degree,
            min_total_degree: 0,
            exact_prime_count: None,
        }
    }
}

/// `(Σ L(A)/|A|, Σ W(A)/|A|, Σ τ(A)/|A|)` over a finite set of squarefree `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LwSums {
    pub l: BigRational,
    pub w: BigRational,
    pub tau: BigRational,
}

impl LwSums {
    /// `(Σ τ/|A|)² ≤ (Σ L/|A|)(Σ W/|A|)`, exactly.
    pub fn cauchy_schwarz_holds(&self) -> bool {
        &self.tau * &self.tau <= &self.l * &self.w
    }
}

impl Serialize for LwSums {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("LwSums", 3)?;
        st.serialize_field("l", &RationalValue::from(&self.l))?;
        st.serialize_field("w", &RationalValue::from(&self.w))?;
        st.serialize_field("tau", &RationalValue::from(&self.tau))?;
        st.end()
    }
}

/// A rational as `"num/den"` plus a decimal approximation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RationalValue {
    pub exact: String,
    pub approx: f64,
}

impl From<&BigRational> for RationalValue {
    fn from(r: &BigRational) -> Self {
        RationalValue {
            exact: format!("{}/{}", r.numer(), r.denom()),
            approx: r.to_f64().unwrap_or(f64::NAN),
        }
    }
}

/// Accumulates `Σ weight · stat` over a common denominator `q^top`.
struct Accumulator {
    q: BigUint,
    top: u32,
    l: BigUint,
    w: BigUint,
    tau: BigUint,
}

impl Accumulator {
    fn new(q: u64, top: u32) -> Self {
        Accumulator {
            q: BigUint::from(q),
            top,
            l: BigUint::zero(),
            w: BigUint::zero(),
            tau: BigUint::zero(),
        }
    }

    /// Adds `count` polynomials of degree `deg` sharing the clustering `c`.
    fn add(&mut self, count: &BigUint, deg: u32, c: &DivisorClustering) {
        let scale = count * self.q.pow(self.top - deg);
        self.l += &scale * c.l;
        self.w += &scale * &c.w;
        self.tau += &scale * &c.tau;
    }

    fn finish(self) -> LwSums {
        let den: BigInt = self.q.pow(self.top).into();
        LwSums {
            l: BigRational::new(self.l.into(), den.clone()),
            w: BigRational::new(self.w.into(), den.clone()),
            tau: BigRational::new(self.tau.into(), den),
        }
    }
}

fn check_degree_budget(max_total_degree: u32) -> Result<()> {
    if max_total_degree > MAX_SQUAREFREE_DEGREE {
        return Err(Error::resource(
            "squarefree degree",
            max_total_degree,
            MAX_SQUAREFREE_DEGREE,
        ));
    }
    Budget::default().check(max_total_degree)
}

/// Visits each degree multiset of a squarefree `A` with `deg A ≤ max_total_degree`
/// under `cons`, with the number of such `A`.
fn for_each_squarefree_type(
    seq: &PrimeCountSeq,
    max_total_degree: u32,
    cons: &SquarefreeConstraints,
    mut f: impl FnMut(u32, &[u32], &BigUint),
) {
    for t in cons.min_total_degree..=max_total_degree {
        let mut it = Partitions::new(t, cons.max_prime_degree.min(t.max(1)));
        while let Some(parts) = it.advance() {
            if cons.exact_prime_count.is_some_and(|k| parts.len() != k as usize) {
                continue;
            }
            let count = seq.count_squarefree_with_parts(parts);
            if !count.is_zero() {
                f(t, parts, &count);
            }
        }
    }
}

/// Truncations to `deg A ≤ max_total_degree` of `Σ L/|A|`, `Σ W/|A|` and
/// `Σ τ/|A|` over squarefree `A` satisfying `cons`. Every term is
/// nonnegative, so each is a lower bound for the full sum.
pub fn sum_lw_over_squarefree(
    q: u64,
    max_total_degree: u32,
    cons: &SquarefreeConstraints,
) -> Result<LwSums> {
    check_degree_budget(max_total_degree)?;
    let seq = PrimeCountSeq::new(q, max_total_degree.max(1))?;
    let mut acc = Accumulator::new(q, max_total_degree);
    for_each_squarefree_type(&seq, max_total_degree, cons, |t, parts, count| {
        acc.add(count, t, &DivisorClustering::squarefree(parts));
    });
    Ok(acc.finish())
}

/// `Σ_{deg A ≤ max_total_degree, A squarefree} L(A)/|A|`.
pub fn sum_l_all(q: u64, max_total_degree: u32) -> Result<BigRational> {
    let cons = SquarefreeConstraints::unconstrained(max_total_degree);
    Ok(sum_lw_over_squarefree(q, max_total_degree, &cons)?.l)
}

/// `Σ L(A)/|A|` over squarefree `A` with `deg P⁺(A) ≤ d`, `deg A ≥ m`,
/// truncated at `deg A ≤ max_total_degree`.
pub fn truncated_t(q: u64, d: u32, m: u32, max_total_degree: u32) -> Result<BigRational> {
    let cons = SquarefreeConstraints {
        max_prime_degree: d,
        min_total_degree: m,
        exact_prime_count: None,
    };
    Ok(sum_lw_over_squarefree(q, max_total_degree, &cons)?.l)
}

/// As [`truncated_t`] with `ω(A) = k` in addition.
pub fn truncated_t_k(q: u64, d: u32, m: u32, k: u32, max_total_degree: u32) -> Result<BigRational> {
    let cons = SquarefreeConstraints {
        max_prime_degree: d,
        min_total_degree: m,
        exact_prime_count: Some(k),
    };
    Ok(sum_lw_over_squarefree(q, max_total_degree, &cons)?.l)
}

/// `Σ L(A) / (|A| (deg P⁺(A) + d − deg A)²)` over squarefree `A` with
/// `deg P⁺(A) ≤ d` and `deg A ≤ max_total_degree`, where `deg P⁺(1) = 0`.
/// A lower bound for the untruncated sum.
///
/// Requires `max_total_degree ≤ d`, which keeps every denominator positive.
pub fn truncated_s(q: u64, d: u32, max_total_degree: u32) -> Result<BigRational> {
    if d == 0 {
        return Err(Error::InvalidArgument("d must be ≥ 1".into()));
    }
    if max_total_degree > d {
        return Err(Error::InvalidArgument(format!(
            "max total degree {max_total_degree} exceeds d = {d}"
        )));
    }
    check_degree_budget(max_total_degree)?;
    let seq = PrimeCountSeq::new(q, max_total_degree.max(1))?;
    let qb = BigUint::from(q);
    let cons = SquarefreeConstraints::unconstrained(d);
    let mut acc = BigRational::zero();
    for_each_squarefree_type(&seq, max_total_degree, &cons, |t, parts, count| {
        let top = parts.first().copied().unwrap_or(0);
        let gap = u64::from(top + d - t);
        let l = DivisorClustering::squarefree(parts).l;
        let num = count * BigUint::from(l);
        let den = qb.pow(t) * BigUint::from(gap * gap);
        acc += BigRational::new(num.into(), den.into());
    });
    Ok(acc)
}

/// `(L, W, τ)` sums over `A(b)`: squarefree `A` with exactly `b_j` prime
/// factors whose degrees lie in block `j` of `blocks`. The set is finite, so
/// the sums are exact.
pub fn block_sums(q: u64, blocks: &DegreeIntervals, b: &[u32]) -> Result<LwSums> {
    if b.len() > blocks.len() {
        return Err(Error::InvalidArgument(format!(
            "{} block counts for {} blocks",
            b.len(),
            blocks.len()
        )));
    }
    let ranges: Vec<(u32, u32)> = blocks.intervals()[..b.len()]
        .iter()
        .map(|iv| (iv.start, iv.end))
        .collect();
    let top: u32 = b.iter().zip(&ranges).map(|(&bj, &(_, end))| bj * end).sum();
    let seq = PrimeCountSeq::new(q, ranges.last().map_or(1, |r| r.1).max(1))?;
    let mut acc = Accumulator::new(q, top);
    let mut parts = Vec::new();
    block_rec(&seq, &ranges, b, 0, &mut parts, &BigUint::one(), &mut acc);
    Ok(acc.finish())
}

fn block_rec(
    seq: &PrimeCountSeq,
    ranges: &[(u32, u32)],
    b: &[u32],
    j: usize,
    parts: &mut Vec<u32>,
    count: &BigUint,
    acc: &mut Accumulator,
) {
    if j == b.len() {
        let deg = parts.iter().sum();
        acc.add(count, deg, &DivisorClustering::squarefree(parts));
        return;
    }
    let (lo, hi) = ranges[j];
    // multisets of size b_j from lo..=hi, as nonincreasing sequences
    fn pick(
        seq: &PrimeCountSeq,
        lo: u32,
        max: u32,
        left: u32,
        chosen: &mut Vec<u32>,
        out: &mut Vec<(Vec<u32>, BigUint)>,
    ) {
        if left == 0 {
            let ways = multiplicities(chosen)
                .into_iter()
                .map(|(e, m)| crate::series::binomial(seq.get(e), m))
                .product::<BigUint>();
            if !ways.is_zero() {
                out.push((chosen.clone(), ways));
            }
            return;
        }
        for e in (lo..=max).rev() {
            chosen.push(e);
            pick(seq, lo, e, left - 1, chosen, out);
            chosen.pop();
        }
    }
    let mut choices = Vec::new();
    pick(seq, lo, hi, b[j], &mut Vec::new(), &mut choices);
    for (chosen, ways) in choices {
        let before = parts.len();
        parts.extend(&chosen);
        block_rec(seq, ranges, b, j + 1, parts, &(count * ways), acc);
        parts.truncate(before);
    }
}

/// The block-sum comparison quantities for one vector `b`:
///
/// * `w_ratio = Σ_{A(b)} W/|A| ÷ [(2 log 2)^{Σb} / ∏b_j! · Σ_j 2^{−j + b_1 + ⋯ + b_j}]`
/// * `tau_ratio = Σ_{A(b)} τ/|A| ÷ [(2 log 2)^{Σb} / ∏b_j!]`
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockRatios {
    pub b: Vec<u32>,
    pub w_ratio: f64,
    pub tau_ratio: f64,
}

pub fn block_ratios(q: u64, blocks: &DegreeIntervals, b: &[u32]) -> Result<BlockRatios> {
    let sums = block_sums(q, blocks, b)?;
    let total: u32 = b.iter().sum();
    let fact: f64 = b.iter().map(|&x| factorial(x).to_f64().unwrap_or(f64::INFINITY)).product();
    let base = (2.0 * std::f64::consts::LN_2).powi(total as i32) / fact;
    let mut prefix = 0i32;
    let mut spread = 0.0;
    for (j, &bj) in b.iter().enumerate() {
        prefix += bj as i32;
        spread += 2f64.powi(prefix - (j as i32 + 1));
    }
    Ok(BlockRatios {
        b: b.to_vec(),
        w_ratio: sums.w.to_f64().unwrap_or(f64::NAN) / (base * spread),
        tau_ratio: sums.tau.to_f64().unwrap_or(f64::NAN) / base,
    })
}

/// Largest index set the family builder will materialize.
pub const MAX_FAMILY_SIZE: u64 = 10_000_000;

/// The weighted family of block-count vectors used in the lower bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LowerBoundFamily {
    pub q: u64,
    pub b: u64,
    pub m: u32,
    /// `⌊log₂ b − 2M⌋`.
    pub k: u32,
    /// `M + k − 1`.
    pub j: u32,
    /// Growth constant of the degree blocks actually used.
    pub growth_constant: f64,
    /// Block boundaries `λ_0..=λ_J`.
    pub boundaries: Vec<u32>,
    pub size: u64,
    pub min_f: f64,
    /// Largest `Σ b_j λ_j` over the family.
    pub max_degree: u64,
    /// Whether every vector satisfies `Σ b_j λ_j ≤ b/8`.
    pub degree_cap_ok: bool,
    pub cap_violations: u64,
    /// `Σ 1/(∏ b_j! · f(b))`.
    pub weighted_sum: f64,
    /// `weighted_sum / (k^{k−1}/k!)`.
    pub ratio_factorial: f64,
    /// `weighted_sum / k^{−3/2}`.
    pub ratio_power: f64,
}

/// `f(b) = Σ_{h=M}^{J} 2^{M−1−h+b_M+⋯+b_h}` with `b` indexed from 1.
pub fn family_weight(b: &[u32], m: u32) -> f64 {
    let mut s = 0i64;
    let mut f = 0.0;
    for h in m..=b.len() as u32 {
        if h >= 1 {
            s += i64::from(b[h as usize - 1]);
        }
        f += 2f64.powi((i64::from(m) - 1 - i64::from(h) + s) as i32);
    }
    f
}

pub fn build_lower_bound_family(q: u64, b: u64, m: u32) -> Result<LowerBoundFamily> {
    if b < 2 {
        return Err(Error::InvalidArgument("b must be ≥ 2".into()));
    }
    let k = ((b as f64).log2() - 2.0 * f64::from(m)).floor();
    if k < 1.0 {
        return Err(Error::InvalidArgument(format!(
            "k = ⌊log₂ {b} − 2·{m}⌋ < 1"
        )));
    }
    let k = k as u32;
    let j = m + k - 1;
    let blocks = DegreeIntervals::build(q, j as usize)?;
    let boundaries = blocks.boundaries();
    let caps: Vec<u32> = (1..=j)
        .map(|i| if i <= m { 0 } else { (m * i).min(m * (j - i + 1)) })
        .collect();
    let size = caps
        .iter()
        .try_fold(1u64, |acc, &c| acc.checked_mul(u64::from(c) + 1))
        .filter(|&s| s <= MAX_FAMILY_SIZE)
        .ok_or_else(|| Error::resource("family size", "> cap", MAX_FAMILY_SIZE))?;

    let fact: Vec<f64> = (0..=caps.iter().copied().max().unwrap_or(0))
        .map(|x| factorial(x).to_f64().unwrap_or(f64::INFINITY))
        .collect();
    let mut vec = vec![0u32; j as usize];
    let mut min_f = f64::INFINITY;
    let mut max_degree = 0u64;
    let mut cap_violations = 0u64;
    let mut weighted_sum = 0.0;
    loop {
        let f = family_weight(&vec, m);
        min_f = min_f.min(f);
        let deg: u64 = vec
            .iter()
            .enumerate()
            .map(|(i, &x)| u64::from(x) * u64::from(boundaries[i + 1]))
            .sum();
        max_degree = max_degree.max(deg);
        if 8 * deg > b {
            cap_violations += 1;
        }
        let prod: f64 = vec.iter().map(|&x| fact[x as usize]).product();
        weighted_sum += 1.0 / (prod * f);
        // odometer over the free coordinates
        let mut i = 0;
        loop {
            if i == vec.len() {
                let kf = f64::from(k);
                let reference = kf.powi(k as i32 - 1) / factorial(k).to_f64().unwrap_or(f64::INFINITY);
                return Ok(LowerBoundFamily {
                    q,
                    b,
                    m,
                    k,
                    j,
                    growth_constant: blocks.growth_constant(),
                    boundaries,
                    size,
                    min_f,
                    max_degree,
                    degree_cap_ok: cap_violations == 0,
                    cap_violations,
                    weighted_sum,
                    ratio_factorial: weighted_sum / reference,
                    ratio_power: weighted_sum * kf.powf(1.5),
                });
            }
            if vec[i] < caps[i] {
                vec[i] += 1;
                break;
            }
            vec[i] = 0;
            i += 1;
        }
    }
}

/// The family for the smallest `M` whose vectors all satisfy the degree cap.
/// Values of `M` whose family exceeds [`MAX_FAMILY_SIZE`] are skipped.
pub fn build_lower_bound_family_auto(q: u64, b: u64) -> Result<LowerBoundFamily> {
    let mut m = 1;
    loop {
        match build_lower_bound_family(q, b, m) {
            Ok(fam) if fam.degree_cap_ok => return Ok(fam),
            Ok(_) | Err(Error::Resource { .. }) => m += 1,
            Err(Error::InvalidArgument(_)) => {
                return Err(Error::InvalidArgument(format!(
                    "no M meets the degree cap Σ b_j λ_j ≤ {b}/8"
                )))
            }
            Err(e) => return Err(e),
        }
    }
}
