//! Exact counting and simulation for the multiplication-table problem in
//! `F_q[t]` and in the symmetric groups.
//!
//! The central fact used throughout is that whether a monic `F` of degree `n`
//! has a divisor of degree `b` depends only on its factorization type
//! `λ_F`: it does iff some sub-multiset of `λ_F` sums to `b`. The same holds
//! for permutations and their cycle types. Exact counts are therefore sums
//! over partitions, and every such sum has a brute-force oracle here.

pub mod census;
pub mod cli;
pub mod divstats;
pub mod error;
pub mod gfpoly;
pub mod interval;
pub mod partitions;
pub mod primecount;
pub mod sampler;
pub mod series;

pub use error::{Error, Result};

/// Arbitrary-precision count.
pub type BigCount = num_bigint::BigUint;
/// Exact rational value.
pub type BigRatio = num_rational::BigRational;
