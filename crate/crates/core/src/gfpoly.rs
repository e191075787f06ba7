//! Monic polynomials over a prime field `F_p`: arithmetic, rank encoding,
//! a smallest-prime-factor sieve, and factorization.
//!
//! A monic polynomial of degree `n` is identified with its rank
//! `k = Σ_{i<n} c_i p^i ∈ [0, p^n)` built from its non-leading coefficients.
//! `(p, n, k)` is the stable external encoding.

use std::fmt;

use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Default cap on the number of sieve entries (`Σ_{n≤N} p^n`).
pub const DEFAULT_SPF_BUDGET: u64 = 100_000_000;

/// Largest supported modulus; keeps every intermediate in `u64`.
pub const MAX_MODULUS: u32 = 1 << 16;

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn check_modulus(p: u32) -> Result<()> {
    if !is_prime_u64(u64::from(p)) {
        return Err(Error::NotPrime(u64::from(p)));
    }
    if p > MAX_MODULUS {
        return Err(Error::OutOfRange(format!("modulus {p} > {MAX_MODULUS}")));
    }
    Ok(())
}

/// `p^n` if it fits in a `u64`.
pub fn checked_pow(p: u64, n: usize) -> Option<u64> {
    let mut acc = 1u64;
    for _ in 0..n {
        acc = acc.checked_mul(p)?;
    }
    Some(acc)
}

/// A monic polynomial over `F_p`; the leading coefficient is implicit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonicPoly {
    p: u32,
    coeffs: Vec<u32>,
}

impl MonicPoly {
    /// `coeffs` are the non-leading coefficients, lowest degree first.
    pub fn new(p: u32, coeffs: Vec<u32>) -> Result<Self> {
        check_modulus(p)?;
        if let Some(&c) = coeffs.iter().find(|&&c| c >= p) {
            return Err(Error::OutOfRange(format!("coefficient {c} not reduced mod {p}")));
        }
        Ok(MonicPoly { p, coeffs })
    }

    pub fn one(p: u32) -> Result<Self> {
        Self::new(p, Vec::new())
    }

    /// `x + c`.
    pub fn linear(p: u32, c: u32) -> Result<Self> {
        Self::new(p, vec![c])
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// Non-leading coefficients, lowest degree first.
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// All coefficients including the leading 1.
    pub fn full_coeffs(&self) -> Vec<u32> {
        let mut v = self.coeffs.clone();
        v.push(1);
        v
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn rank(&self) -> u64 {
        let p = u64::from(self.p);
        self.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * p + u64::from(c))
    }

    /// The monic polynomial of degree `n` with rank `k`.
    pub fn unrank(p: u32, n: usize, k: u64) -> Result<Self> {
        check_modulus(p)?;
        let size = checked_pow(u64::from(p), n)
            .ok_or_else(|| Error::OutOfRange(format!("{p}^{n} overflows u64")))?;
        if k >= size {
            return Err(Error::OutOfRange(format!("rank {k} not below {p}^{n}")));
        }
        Ok(Self::unrank_unchecked(p, n, k))
    }

    pub(crate) fn unrank_unchecked(p: u32, n: usize, mut k: u64) -> Self {
        let pp = u64::from(p);
        let coeffs = (0..n)
            .map(|_| {
                let c = (k % pp) as u32;
                k /= pp;
                c
            })
            .collect();
        MonicPoly { p, coeffs }
    }

    pub fn mul(&self, other: &MonicPoly) -> Result<MonicPoly> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        let p = u64::from(self.p);
        let a = self.full_coeffs();
        let b = other.full_coeffs();
        let mut c = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                c[i + j] = (c[i + j] + u64::from(x) * u64::from(y)) % p;
            }
        }
        c.pop();
        Ok(MonicPoly {
            p: self.p,
            coeffs: c.into_iter().map(|v| v as u32).collect(),
        })
    }

    /// `(quotient, remainder)` of division by a monic divisor.
    pub fn div_rem(&self, d: &MonicPoly) -> Result<(MonicPoly, Vec<u32>)> {
        if self.p != d.p {
            return Err(Error::ModulusMismatch(self.p, d.p));
        }
        if d.degree() > self.degree() {
            return Err(Error::InvalidArgument("divisor degree exceeds dividend".into()));
        }
        let p = self.p;
        let mut r = self.full_coeffs();
        let dc = d.full_coeffs();
        let (qd, dd) = (self.degree() - d.degree(), d.degree());
        let mut q = vec![0u32; qd + 1];
        for i in (0..=qd).rev() {
            let lead = r[i + dd];
            if lead == 0 {
                continue;
            }
            q[i] = lead;
            for (j, &c) in dc.iter().enumerate() {
                r[i + j] = sub_mod(r[i + j], mul_mod(lead, c, p), p);
            }
        }
        q.pop();
        r.truncate(dd);
        Ok((MonicPoly { p, coeffs: q }, r))
    }

    pub fn divides(&self, f: &MonicPoly) -> bool {
        self.degree() <= f.degree()
            && f.div_rem(self)
                .map(|(_, r)| r.iter().all(|&c| c == 0))
                .unwrap_or(false)
    }

    /// Irreducibility by trial division against every monic polynomial of
    /// degree at most half the degree.
    pub fn is_irreducible_by_trial(&self) -> bool {
        let n = self.degree();
        if n == 0 {
            return false;
        }
        for d in 1..=n / 2 {
            let count = u64::from(self.p).pow(d as u32);
            for k in 0..count {
                let g = Self::unrank_unchecked(self.p, d, k);
                if g.divides(self) {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for MonicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let term = |i: usize| match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        if n == 0 {
            return f.write_str("1");
        }
        f.write_str(&term(n))?;
        for i in (0..n).rev() {
            let c = self.coeffs[i];
            if c == 0 {
                continue;
            }
            let t = term(i);
            match (c, t.is_empty()) {
                (_, true) => write!(f, " + {c}")?,
                (1, false) => write!(f, " + {t}")?,
                (_, false) => write!(f, " + {c}{t}")?,
            }
        }
        Ok(())
    }
}

#[inline]
fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    (u64::from(a) * u64::from(b) % u64::from(p)) as u32
}

#[inline]
fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

/// Calls `f(rank(B), rank(A·B))` for every monic `B` of degree `e`, in
/// increasing rank of `B`.
///
/// Incrementing one base-`p` digit of `B` (including the wrap `p−1 → 0`)
/// adds `x^j·A` modulo `p`, so the product is maintained incrementally.
pub(crate) fn for_each_product_rank(
    p: u32,
    a_lower: &[u32],
    e: usize,
    pow: &[u64],
    mut f: impl FnMut(u64, u64),
) {
    let a_deg = a_lower.len();
    let n = a_deg + e;
    let mut fa = a_lower.to_vec();
    fa.push(1);
    let mut c = vec![0u32; n];
    let mut r = 0u64;
    for (k, &v) in fa.iter().enumerate() {
        let i = e + k;
        if i < n {
            c[i] = v;
            r += u64::from(v) * pow[i];
        }
    }
    let mut digits = vec![0u32; e];
    let total = pow[e];
    for rank_b in 0..total {
        f(rank_b, r);
        let mut j = 0;
        while j < e {
            for (k, &v) in fa.iter().enumerate() {
                if v == 0 {
                    continue;
                }
                let i = j + k;
                let old = c[i];
                let new = add_mod(old, v, p);
                c[i] = new;
                r = r
                    .wrapping_add(u64::from(new) * pow[i])
                    .wrapping_sub(u64::from(old) * pow[i]);
            }
            digits[j] += 1;
            if digits[j] == p {
                digits[j] = 0;
                j += 1;
            } else {
                break;
            }
        }
    }
}

/// Multiset of prime factors with multiplicities, ascending by degree then
/// rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    p: u32,
    factors: Vec<(MonicPoly, u32)>,
}

impl Factorization {
    pub fn new(p: u32, mut factors: Vec<(MonicPoly, u32)>) -> Self {
        factors.sort_by(|a, b| (a.0.degree(), a.0.rank()).cmp(&(b.0.degree(), b.0.rank())));
        Factorization { p, factors }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn factors(&self) -> &[(MonicPoly, u32)] {
        &self.factors
    }

    pub fn degree(&self) -> usize {
        self.factors
            .iter()
            .map(|(f, m)| f.degree() * *m as usize)
            .sum()
    }

    /// `(prime degree, multiplicity)` per distinct prime.
    pub fn degree_multiplicities(&self) -> Vec<(u32, u32)> {
        self.factors
            .iter()
            .map(|(f, m)| (f.degree() as u32, *m))
            .collect()
    }

    /// `λ_F`.
    pub fn factorization_type(&self) -> Partition {
        let parts = self
            .factors
            .iter()
            .flat_map(|(f, m)| std::iter::repeat_n(f.degree() as u32, *m as usize))
            .collect();
        Partition::from_unsorted(parts).expect("prime degrees are positive")
    }

    /// Number of prime factors counted with multiplicity.
    pub fn omega(&self) -> u32 {
        self.factors.iter().map(|(_, m)| m).sum()
    }

    /// Number of distinct prime factors.
    pub fn omega_distinct(&self) -> usize {
        self.factors.len()
    }

    /// Möbius function.
    pub fn mobius(&self) -> i8 {
        if self.factors.iter().any(|(_, m)| *m >= 2) {
            0
        } else if self.factors.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, m)| *m == 1)
    }

    pub fn is_squarefull(&self) -> bool {
        self.factors.iter().all(|(_, m)| *m >= 2)
    }

    /// `deg P^+(A)`; `0` for `A = 1`.
    pub fn largest_prime_degree(&self) -> usize {
        self.factors.iter().map(|(f, _)| f.degree()).max().unwrap_or(0)
    }

    /// `deg P^-(A)`; `None` stands for `+∞` when `A = 1`.
    pub fn smallest_prime_degree(&self) -> Option<usize> {
        self.factors.iter().map(|(f, _)| f.degree()).min()
    }

    pub fn product(&self) -> Result<MonicPoly> {
        let mut acc = MonicPoly::one(self.p)?;
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(f)?;
            }
        }
        Ok(acc)
    }
}

const NO_PRIME: u32 = u32::MAX;

/// Smallest-prime-factor table for every monic polynomial of degree `≤ N`.
///
/// Entries are global indices `offset(deg) + rank`. A prime maps to itself;
/// a composite to its smallest-degree prime divisor, ties broken by rank.
#[derive(Debug, Clone)]
pub struct SpfTable {
    p: u32,
    max_degree: usize,
    offsets: Vec<u64>,
    pow: Vec<u64>,
    spf: Vec<u32>,
}

impl SpfTable {
    pub fn build(p: u32, max_degree: usize) -> Result<Self> {
        Self::build_with_budget(p, max_degree, DEFAULT_SPF_BUDGET)
    }

    pub fn build_with_budget(p: u32, max_degree: usize, budget: u64) -> Result<Self> {
        check_modulus(p)?;
        let pp = u64::from(p);
        let mut pow = Vec::with_capacity(max_degree + 1);
        let mut offsets = Vec::with_capacity(max_degree + 2);
        let mut total = 0u64;
        for n in 0..=max_degree {
            let size = checked_pow(pp, n)
                .ok_or_else(|| Error::resource("sieve entries", format!("{p}^{n}"), budget))?;
            pow.push(size);
            offsets.push(total);
            total = total
                .checked_add(size)
                .ok_or_else(|| Error::resource("sieve entries", "overflow", budget))?;
        }
        offsets.push(total);
        if total > budget || total >= u64::from(NO_PRIME) {
            return Err(Error::resource("sieve entries", total, budget));
        }
        let mut spf = vec![NO_PRIME; total as usize];
        for d in 1..=max_degree {
            let (lo, hi) = (offsets[d] as usize, offsets[d + 1] as usize);
            for (idx, slot) in spf.iter_mut().enumerate().take(hi).skip(lo) {
                if *slot == NO_PRIME {
                    *slot = idx as u32;
                }
            }
            if 2 * d > max_degree {
                continue;
            }
            for idx in lo..hi {
                if spf[idx] != idx as u32 {
                    continue;
                }
                let prime = MonicPoly::unrank_unchecked(p, d, (idx - lo) as u64);
                for e in d..=max_degree - d {
                    let base = offsets[d + e] as usize;
                    for_each_product_rank(p, prime.coeffs(), e, &pow, |_, r| {
                        let slot = &mut spf[base + r as usize];
                        if *slot == NO_PRIME {
                            *slot = idx as u32;
                        }
                    });
                }
            }
        }
        Ok(SpfTable {
            p,
            max_degree,
            offsets,
            pow,
            spf,
        })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Number of entries, `Σ_{n≤N} p^n`.
    pub fn len(&self) -> usize {
        self.spf.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spf.is_empty()
    }

    fn index(&self, f: &MonicPoly) -> Result<usize> {
        if f.p != self.p {
            return Err(Error::ModulusMismatch(f.p, self.p));
        }
        if f.degree() > self.max_degree {
            return Err(Error::DegreeExceedsTable {
                degree: f.degree(),
                max: self.max_degree,
            });
        }
        Ok((self.offsets[f.degree()] + f.rank()) as usize)
    }

    fn poly_at(&self, idx: usize) -> MonicPoly {
        let d = self.offsets.partition_point(|&o| o <= idx as u64) - 1;
        MonicPoly::unrank_unchecked(self.p, d, idx as u64 - self.offsets[d])
    }

    /// Global index of the smallest prime factor of the entry at `(deg, rank)`.
    pub fn entry(&self, degree: usize, rank: u64) -> Option<u64> {
        if degree > self.max_degree || rank >= self.pow[degree] {
            return None;
        }
        let v = self.spf[(self.offsets[degree] + rank) as usize];
        (v != NO_PRIME).then_some(u64::from(v))
    }

    pub fn is_prime(&self, f: &MonicPoly) -> Result<bool> {
        let idx = self.index(f)?;
        Ok(f.degree() > 0 && self.spf[idx] == idx as u32)
    }

    /// Smallest-degree prime divisor (smallest rank among ties); `None` for 1.
    pub fn smallest_prime_factor(&self, f: &MonicPoly) -> Result<Option<MonicPoly>> {
        let idx = self.index(f)?;
        let s = self.spf[idx];
        Ok((s != NO_PRIME).then(|| self.poly_at(s as usize)))
    }

    /// Primes of degree `d` in rank order.
    pub fn primes_of_degree(&self, d: usize) -> impl Iterator<Item = MonicPoly> + '_ {
        let (lo, hi) = if d == 0 || d > self.max_degree {
            (0, 0)
        } else {
            (self.offsets[d] as usize, self.offsets[d + 1] as usize)
        };
        (lo..hi)
            .filter(move |&i| self.spf[i] == i as u32)
            .map(move |i| MonicPoly::unrank_unchecked(self.p, d, (i - lo) as u64))
    }

    pub fn factorize(&self, f: &MonicPoly) -> Result<Factorization> {
        self.index(f)?;
        let mut factors: Vec<(MonicPoly, u32)> = Vec::new();
        let mut cur = f.clone();
        while !cur.is_one() {
            let idx = (self.offsets[cur.degree()] + cur.rank()) as usize;
            let s = self.spf[idx] as usize;
            let prime = if s == idx { cur.clone() } else { self.poly_at(s) };
            cur = if s == idx {
                MonicPoly::one(self.p)?
            } else {
                cur.div_rem(&prime)?.0
            };
            match factors.last_mut() {
                Some((q, m)) if *q == prime => *m += 1,
                _ => factors.push((prime, 1)),
            }
        }
        Ok(Factorization::new(self.p, factors))
    }

    /// `λ_F`, without materializing the prime factors' multiplicity groups.
    pub fn factorization_type(&self, f: &MonicPoly) -> Result<Partition> {
        self.index(f)?;
        let mut parts = Vec::new();
        let mut cur = f.clone();
        while !cur.is_one() {
            let idx = (self.offsets[cur.degree()] + cur.rank()) as usize;
            let s = self.spf[idx] as usize;
            if s == idx {
                parts.push(cur.degree() as u32);
                break;
            }
            let prime = self.poly_at(s);
            parts.push(prime.degree() as u32);
            cur = cur.div_rem(&prime)?.0;
        }
        Partition::from_unsorted(parts)
    }
}

/// Computes `λ_F` from a factorization.
pub fn factorization_type(f: &MonicPoly, table: &SpfTable) -> Result<Partition> {
    table.factorization_type(f)
}

/// Factors `f` with the sieve table.
pub fn factorize(f: &MonicPoly, table: &SpfTable) -> Result<Factorization> {
    table.factorize(f)
}

/// Dense polynomial arithmetic over `F_p` (explicit leading coefficient,
/// trailing zeros trimmed). Used by the gcd-based factorization-type route.
mod dense {
    use super::{add_mod, mul_mod, sub_mod};

    pub type Poly = Vec<u32>;

    pub fn trim(mut a: Poly) -> Poly {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn inv_mod(a: u32, p: u32) -> u32 {
        let (mut t, mut new_t) = (0i64, 1i64);
        let (mut r, mut new_r) = (i64::from(p), i64::from(a));
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        debug_assert_eq!(r, 1);
        t.rem_euclid(i64::from(p)) as u32
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Poly {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| sub_mod(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p))
            .collect();
        trim(out)
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut c = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                c[i + j] = add_mod(c[i + j], mul_mod(x, y, p), p);
            }
        }
        trim(c)
    }

    pub fn div_rem(a: &[u32], b: &[u32], p: u32) -> (Poly, Poly) {
        let b = trim(b.to_vec());
        assert!(!b.is_empty(), "division by zero polynomial");
        let mut r = trim(a.to_vec());
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let inv = inv_mod(*b.last().unwrap(), p);
        let mut q = vec![0u32; r.len() - b.len() + 1];
        for i in (0..q.len()).rev() {
            let lead = r[i + b.len() - 1];
            if lead == 0 {
                continue;
            }
            let c = mul_mod(lead, inv, p);
            q[i] = c;
            for (j, &bj) in b.iter().enumerate() {
                r[i + j] = sub_mod(r[i + j], mul_mod(c, bj, p), p);
            }
        }
        r.truncate(b.len() - 1);
        (trim(q), trim(r))
    }

    pub fn rem(a: &[u32], b: &[u32], p: u32) -> Poly {
        div_rem(a, b, p).1
    }

    pub fn monic(a: Poly, p: u32) -> Poly {
        match a.last() {
            None | Some(&1) => a,
            Some(&l) => {
                let inv = inv_mod(l, p);
                a.into_iter().map(|c| mul_mod(c, inv, p)).collect()
            }
        }
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Poly {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        monic(a, p)
    }

    pub fn derivative(a: &[u32], p: u32) -> Poly {
        let out = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, (i as u64 % u64::from(p)) as u32, p))
            .collect();
        trim(out)
    }

    pub fn pow_mod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Poly {
        let mut result = vec![1u32];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                result = rem(&mul(&result, &b, p), m, p);
            }
            b = rem(&mul(&b, &b, p), m, p);
            e >>= 1;
        }
        result
    }
}

/// `λ_F` via squarefree decomposition and distinct-degree splitting.
///
/// Independent of [`SpfTable`] and without a degree limit; used for random
/// samples at degrees too large to sieve and as a cross-check of the sieve.
pub fn factorization_type_by_gcd(f: &MonicPoly) -> Partition {
    let p = f.p;
    let mut parts = Vec::new();
    squarefree_parts(f.full_coeffs(), 1, p, &mut parts);
    Partition::from_unsorted(parts).expect("prime degrees are positive")
}

fn squarefree_parts(f: Vec<u32>, mult: u32, p: u32, out: &mut Vec<u32>) {
    if f.len() <= 1 {
        return;
    }
    let df = dense::derivative(&f, p);
    let mut c = dense::gcd(&f, &df, p);
    let mut w = dense::div_rem(&f, &c, p).0;
    let mut i = 1u32;
    while w.len() > 1 {
        let y = dense::gcd(&w, &c, p);
        let z = dense::div_rem(&w, &y, p).0;
        if z.len() > 1 {
            distinct_degree_parts(z, mult * i, p, out);
        }
        i += 1;
        c = dense::div_rem(&c, &y, p).0;
        w = y;
    }
    if c.len() > 1 {
        // c is a p-th power: take the p-th root coefficientwise.
        let root: Vec<u32> = c.iter().step_by(p as usize).copied().collect();
        squarefree_parts(root, mult * p, p, out);
    }
}

fn distinct_degree_parts(mut f: Vec<u32>, mult: u32, p: u32, out: &mut Vec<u32>) {
    let x = vec![0u32, 1];
    let mut h = x.clone();
    let mut d = 1u32;
    while f.len() > 1 {
        let deg = f.len() - 1;
        if deg < 2 * d as usize {
            out.extend(std::iter::repeat_n(deg as u32, mult as usize));
            return;
        }
        h = dense::pow_mod(&h, u64::from(p), &f, p);
        let g = dense::gcd(&f, &dense::sub(&h, &x, p), p);
        let gdeg = g.len() - 1;
        if gdeg > 0 {
            let count = gdeg as u32 / d;
            out.extend(std::iter::repeat_n(d, (count * mult) as usize));
            f = dense::div_rem(&f, &g, p).0;
            h = dense::rem(&h, &f, p);
        }
        d += 1;
    }
}
