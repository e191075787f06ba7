//! Self-checks comparing the exact routines against independent oracles.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::census::{self, Budget};
use crate::divstats::{self, SquarefreeConstraints};
use crate::gfpoly::{MonicPoly, SpfTable};
use crate::partitions::{self, Partition};
use crate::primecount::{self, PrimeCountSeq};
use crate::series;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Scope {
    All,
    Partitions,
    Primecount,
    Census,
    Divstats,
    /// Rough and squarefull counts and inverse prime sums.
    Appendix,
}

impl Scope {
    pub fn name(self) -> &'static str {
        match self {
            Scope::All => "all",
            Scope::Partitions => "partitions",
            Scope::Primecount => "primecount",
            Scope::Census => "census",
            Scope::Divstats => "divstats",
            Scope::Appendix => "appendix",
        }
    }
}

/// Hooks for substituting building blocks, so the suite can be shown to
/// catch a deliberately broken one.
#[derive(Clone, Copy)]
pub struct VerifyOptions {
    pub multichoose: fn(&BigUint, u32) -> BigUint,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            multichoose: series::multichoose,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub scope: Scope,
    pub passed: bool,
    pub detail: String,
}

/// `Ok(Ok(detail))` on success, `Ok(Err(detail))` on a failed comparison.
type Outcome = Result<std::result::Result<String, String>>;

type CheckFn = fn(&VerifyOptions) -> Outcome;

const CHECKS: &[(Scope, &str, CheckFn)] = &[
    (Scope::Partitions, "partition_numbers", check_partition_numbers),
    (Scope::Partitions, "has_subpartition", check_subpartitions),
    (Scope::Partitions, "cycle_type_probability", check_probabilities),
    (Scope::Primecount, "prime_poly_count", check_gauss),
    (Scope::Primecount, "count_with_type", check_count_with_type),
    (Scope::Primecount, "degree_intervals", check_intervals),
    (Scope::Census, "count_h", check_count_h),
    (Scope::Census, "count_t", check_count_t),
    (Scope::Census, "anchors", check_anchors),
    (Scope::Divstats, "cauchy_schwarz", check_cauchy_schwarz),
    (Scope::Divstats, "l_bounds", check_l_bounds),
    (Scope::Divstats, "truncated_s", check_truncated_s),
    (Scope::Appendix, "count_rough", check_rough),
    (Scope::Appendix, "count_squarefull", check_squarefull),
    (Scope::Appendix, "inverse_prime_sum", check_inverse_sums),
];

pub fn run(scope: Scope, opts: &VerifyOptions) -> Vec<CheckResult> {
    CHECKS
        .iter()
        .filter(|(s, _, _)| scope == Scope::All || *s == scope)
        .map(|&(s, name, f)| {
            let (passed, detail) = match f(opts) {
                Ok(Ok(d)) => (true, d),
                Ok(Err(d)) => (false, d),
                Err(e) => (false, format!("error: {e}")),
            };
            CheckResult {
                name,
                scope: s,
                passed,
                detail,
            }
        })
        .collect()
}

fn fail(msg: String) -> Outcome {
    Ok(Err(msg))
}

fn check_partition_numbers(_: &VerifyOptions) -> Outcome {
    let p = partitions::partition_numbers(40);
    for n in 0..=40u32 {
        let enumerated = partitions::enumerate_partitions(n).count();
        if BigUint::from(enumerated) != p[n as usize] {
            return fail(format!("n={n}: enumerated {enumerated}, recurrence {}", p[n as usize]));
        }
    }
    Ok(Ok("n ≤ 40".into()))
}

fn check_subpartitions(_: &VerifyOptions) -> Outcome {
    for n in 0..=14u32 {
        for lambda in partitions::enumerate_partitions(n) {
            let parts = lambda.parts();
            let mut naive = vec![false; n as usize + 1];
            for mask in 0u32..1 << parts.len() {
                let s: u32 = (0..parts.len()).filter(|i| mask >> i & 1 == 1).map(|i| parts[i]).sum();
                naive[s as usize] = true;
            }
            for b in 0..=n {
                if lambda.has_subpartition(b) != naive[b as usize] {
                    return fail(format!("{lambda} b={b}"));
                }
            }
        }
    }
    Ok(Ok("n ≤ 14 against subset enumeration".into()))
}

fn check_probabilities(_: &VerifyOptions) -> Outcome {
    for n in 0..=25u32 {
        let total: BigRational = partitions::enumerate_partitions(n)
            .map(|l| partitions::cycle_type_probability(&l))
            .sum();
        if total != BigRational::from_integer(1.into()) {
            return fail(format!("n={n}: Σ P(λ) = {total}"));
        }
    }
    Ok(Ok("Σ P(λ) = 1 for n ≤ 25".into()))
}

fn check_gauss(_: &VerifyOptions) -> Outcome {
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        for n in 1..=16u32 {
            let mut sum = BigUint::zero();
            for d in (1..=n).filter(|d| n % d == 0) {
                sum += primecount::prime_poly_count(q, d)? * d;
            }
            if sum != BigUint::from(q).pow(n) {
                return fail(format!("q={q} n={n}"));
            }
        }
    }
    Ok(Ok("Σ_{d|n} d·π_q(d) = q^n".into()))
}

fn check_count_with_type(opts: &VerifyOptions) -> Outcome {
    for (p, max_n) in [(2u32, 10u32), (3, 6), (5, 4)] {
        let table = SpfTable::build(p, max_n as usize)?;
        let seq = PrimeCountSeq::new(u64::from(p), max_n)?;
        for n in 0..=max_n {
            let mut census = std::collections::HashMap::<Partition, u64>::new();
            for k in 0..u64::from(p).pow(n) {
                let f = MonicPoly::unrank(p, n as usize, k)?;
                *census.entry(table.factorization_type(&f)?).or_default() += 1;
            }
            for lambda in partitions::enumerate_partitions(n) {
                let exact = seq.count_with_type_using(&lambda, opts.multichoose)?;
                let seen = census.get(&lambda).copied().unwrap_or(0);
                if exact != BigUint::from(seen) {
                    return fail(format!("p={p} λ={lambda}: formula {exact}, census {seen}"));
                }
            }
        }
    }
    Ok(Ok("π_q(n,λ) against factorization census".into()))
}

fn check_intervals(_: &VerifyOptions) -> Outcome {
    let ln2 = std::f64::consts::LN_2;
    for q in [2u64, 3, 5] {
        let iv = primecount::build_degree_intervals(q, 10)?;
        for (j, block) in iv.intervals().iter().enumerate() {
            let exact = iv.exact_mass(j + 1)?.to_f64().unwrap_or(f64::NAN);
            if !block.overflow && exact > ln2 {
                return fail(format!("q={q} block {} mass {exact}", j + 1));
            }
            if exact < block.mass.lo || exact > block.mass.hi {
                return fail(format!("q={q} block {} enclosure misses {exact}", j + 1));
            }
        }
    }
    Ok(Ok("block masses certified".into()))
}

fn check_count_h(_: &VerifyOptions) -> Outcome {
    for (p, max_n) in [(2u32, 12u32), (3, 7), (5, 5)] {
        let table = SpfTable::build(p, max_n as usize)?;
        for n in 0..=max_n {
            let brute = census::brute_h_census(&table, n)?;
            let all: Vec<u32> = (0..=n).collect();
            let exact = census::count_h_many(u64::from(p), n, &all, &Budget::default())?;
            for b in 0..=n as usize {
                if exact[b] != BigUint::from(brute[b]) {
                    return fail(format!("p={p} n={n} b={b}: {} vs {}", exact[b], brute[b]));
                }
            }
        }
    }
    Ok(Ok("|H(n,b)| against factorization census".into()))
}

fn check_count_t(_: &VerifyOptions) -> Outcome {
    for n in 0..=8u32 {
        let brute = census::brute_t_census(n)?;
        let all: Vec<u32> = (0..=n).collect();
        let exact = census::count_t_many(n, &all, &Budget::default())?;
        for b in 0..=n as usize {
            if exact[b] != BigUint::from(brute[b]) {
                return fail(format!("n={n} b={b}: {} vs {}", exact[b], brute[b]));
            }
        }
    }
    Ok(Ok("|T(n,b)| against S_n enumeration, n ≤ 8".into()))
}

fn check_anchors(_: &VerifyOptions) -> Outcome {
    let got = [
        census::count_h(2, 2, 1)?.count,
        census::count_h(2, 4, 2)?.count,
        census::count_t(4, 2)?.count,
        census::count_m(2, 4)?.count,
    ];
    let want = [3u32, 9, 10, 9].map(BigUint::from);
    if got != want {
        return fail(format!("{got:?}"));
    }
    let delta = census::AsymptoticParams::default().delta_6();
    if delta != "0.086071" {
        return fail(format!("delta {delta}"));
    }
    Ok(Ok("H(2,2,1)=3 H(2,4,2)=9 T(4,2)=10 M(4)=9 δ=0.086071".into()))
}

fn check_cauchy_schwarz(_: &VerifyOptions) -> Outcome {
    let mut sets = 0;
    for q in [2u64, 3] {
        for top in 0..=12u32 {
            for d in 1..=top.max(1) {
                for k in [None, Some(2), Some(3)] {
                    let cons = SquarefreeConstraints {
                        max_prime_degree: d,
                        min_total_degree: top / 3,
                        exact_prime_count: k,
                    };
                    let s = divstats::sum_lw_over_squarefree(q, top, &cons)?;
                    if !s.cauchy_schwarz_holds() {
                        return fail(format!("q={q} top={top} {cons:?}"));
                    }
                    sets += 1;
                }
            }
        }
    }
    Ok(Ok(format!("{sets} constraint sets")))
}

fn check_l_bounds(_: &VerifyOptions) -> Outcome {
    let table = SpfTable::build(2, 12)?;
    for n in 0..=12usize {
        for k in 0..1u64 << n {
            let f = MonicPoly::unrank(2, n, k)?;
            let r = divstats::check_l_bounds(&table.factorize(&f)?);
            if !r.passed() {
                return fail(format!("{f}: {r:?}"));
            }
        }
    }
    Ok(Ok("all monic F over F_2 with deg F ≤ 12".into()))
}

fn check_truncated_s(_: &VerifyOptions) -> Outcome {
    let s = divstats::truncated_s(2, 2, 1)?;
    if s != BigRational::new(3.into(), 4.into()) {
        return fail(format!("S(2) truncated at degree 1 = {s}"));
    }
    Ok(Ok("q=2, d=2, degree ≤ 1 gives 3/4".into()))
}

fn check_rough(_: &VerifyOptions) -> Outcome {
    for (p, max_n) in [(2u32, 12u32), (3, 8)] {
        let table = SpfTable::build(p, max_n as usize)?;
        for n in 1..=max_n {
            let brute = census::brute_rough_census(&table, n)?;
            for d in 1..=n {
                let exact = census::count_rough(u64::from(p), n, d)?;
                if exact != BigUint::from(brute[d as usize]) {
                    return fail(format!("p={p} n={n} d={d}"));
                }
            }
        }
    }
    Ok(Ok("rough counts against factorization census".into()))
}

fn check_squarefull(_: &VerifyOptions) -> Outcome {
    for (p, max_n) in [(2u32, 12u32), (3, 8)] {
        let table = SpfTable::build(p, max_n as usize)?;
        let exact = census::squarefull_counts(u64::from(p), max_n)?;
        for n in 0..=max_n {
            let brute = census::brute_squarefull(&table, n)?;
            if exact[n as usize] != BigUint::from(brute) {
                return fail(format!("p={p} n={n}: {} vs {brute}", exact[n as usize]));
            }
        }
    }
    Ok(Ok("squarefull counts against factorization census".into()))
}

fn check_inverse_sums(_: &VerifyOptions) -> Outcome {
    for q in [2u64, 3, 4, 5] {
        for d1 in 2..=20u32 {
            for d2 in (d1..=200).step_by(9) {
                let s = primecount::inverse_prime_sum(q, d1, d2)?.to_f64().unwrap_or(f64::NAN);
                let log = (f64::from(d2) / f64::from(d1)).ln();
                if (s - log).abs() > 2.0 / f64::from(d1) {
                    return fail(format!("q={q} d1={d1} d2={d2}"));
                }
            }
        }
    }
    Ok(Ok("|Σ 1/|P| − log(d2/d1)| ≤ 2/d1".into()))
}
