//! Closed `f64` intervals with outward rounding, for sound real comparisons.

use std::ops::Add;

use num_rational::BigRational;
use num_traits::ToPrimitive;

/// A closed interval `[lo, hi]` known to contain some real value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };

    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    /// Encloses `x` computed with a relative error at most `rel`.
    pub fn around(x: f64, rel: f64) -> Self {
        let slack = x.abs() * rel;
        Interval {
            lo: (x - slack).next_down(),
            hi: (x + slack).next_up(),
        }
    }

    /// Encloses an exact rational: the nearest `f64` widened by one ulp.
    pub fn from_rational(r: &BigRational) -> Self {
        let x = r.to_f64().unwrap_or(f64::NAN);
        Interval {
            lo: x.next_down(),
            hi: x.next_up(),
        }
    }

    /// Encloses `ln 2`.
    pub fn ln2() -> Self {
        let x = std::f64::consts::LN_2;
        Interval {
            lo: x.next_down(),
            hi: x.next_up(),
        }
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// `Some(true)` if every point is `≤` every point of `other`,
    /// `Some(false)` if every point is `>`, `None` when they overlap.
    pub fn le(&self, other: &Interval) -> Option<bool> {
        if self.hi <= other.lo {
            Some(true)
        } else if self.lo > other.hi {
            Some(false)
        } else {
            None
        }
    }
}

impl Add for Interval {
    type Output = Interval;

    fn add(self, rhs: Interval) -> Interval {
        Interval {
            lo: (self.lo + rhs.lo).next_down(),
            hi: (self.hi + rhs.hi).next_up(),
        }
    }
}
