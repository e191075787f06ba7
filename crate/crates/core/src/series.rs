//! Truncated power series with exact integer coefficients.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

/// `a·b mod u^{len}`.
pub fn mul_trunc(a: &[BigUint], b: &[BigUint], len: usize) -> Vec<BigUint> {
    let mut c = vec![BigUint::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                c[i + j] += x * y;
            }
        }
    }
    c
}

/// `C(n, k)` for a big `n` and small `k`.
pub fn binomial(n: &BigUint, k: u32) -> BigUint {
    if BigUint::from(k) > *n {
        return BigUint::zero();
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= n - BigUint::from(i);
        den *= BigUint::from(i + 1);
    }
    num / den
}

/// Number of multisets of size `k` from `n` kinds: `C(n+k−1, k)`.
pub fn multichoose(n: &BigUint, k: u32) -> BigUint {
    if k == 0 {
        return BigUint::one();
    }
    binomial(&(n + BigUint::from(k) - 1u32), k)
}

/// `(1 + h)^count mod u^{len}` where `h(0) = 0`, expanded binomially.
pub fn one_plus_pow(h: &[BigUint], count: &BigUint, len: usize) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); len];
    if len == 0 {
        return out;
    }
    out[0] = BigUint::one();
    let min_deg = match h.iter().take(len).position(|c| !c.is_zero()) {
        Some(d) => d,
        None => return out,
    };
    debug_assert!(min_deg > 0, "h must vanish at 0");
    let mut hj: Vec<BigUint> = {
        let mut v = vec![BigUint::zero(); len];
        v[0] = BigUint::one();
        v
    };
    let mut j = 1u32;
    while (j as usize) * min_deg < len {
        hj = mul_trunc(&hj, h, len);
        let c = binomial(count, j);
        if c.is_zero() {
            break;
        }
        for (o, t) in out.iter_mut().zip(&hj) {
            if !t.is_zero() {
                *o += &c * t;
            }
        }
        j += 1;
    }
    out
}

/// Coefficients of `num / den mod u^{len}`, `den(0) = 1`, by the linear
/// recurrence `c_n = num_n − Σ_{i≥1} den_i c_{n−i}`.
pub fn rational_series(num: &[BigInt], den: &[BigInt], len: usize) -> Vec<BigInt> {
    assert!(den.first().is_some_and(|d| d.is_one()), "den(0) must be 1");
    let mut c: Vec<BigInt> = Vec::with_capacity(len);
    for n in 0..len {
        let mut v = num.get(n).cloned().unwrap_or_default();
        for (i, d) in den.iter().enumerate().skip(1).take(n) {
            if !d.is_zero() {
                v -= d * &c[n - i];
            }
        }
        c.push(v);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(&BigUint::from(5u32), 2), BigUint::from(10u32));
        assert_eq!(binomial(&BigUint::from(2u32), 3), BigUint::zero());
        assert_eq!(multichoose(&BigUint::from(2u32), 2), BigUint::from(3u32));
        assert_eq!(multichoose(&BigUint::zero(), 0), BigUint::one());
        assert_eq!(multichoose(&BigUint::zero(), 1), BigUint::zero());
    }

    #[test]
    fn power_of_one_plus_u() {
        // (1+u)^5 = 1 5 10 10 5 1
        let got = one_plus_pow(&u(&[0, 1]), &BigUint::from(5u32), 8);
        assert_eq!(got, u(&[1, 5, 10, 10, 5, 1, 0, 0]));
    }

    #[test]
    fn geometric_recurrence() {
        // 1/(1-2u) = Σ 2^n u^n
        let c = rational_series(&[BigInt::one()], &[BigInt::one(), BigInt::from(-2)], 6);
        let want: Vec<BigInt> = (0..6).map(|n| BigInt::from(1u64 << n)).collect();
        assert_eq!(c, want);
    }
}
