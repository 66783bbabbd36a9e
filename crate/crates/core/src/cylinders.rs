//! Cylinder sets of the redundant system.
//!
//! The rank-`m` cylinder with base `c_1..c_m` is the set of numbers having a
//! representation that starts with that block. It is the closed interval
//! `[a, a + r/(s^m (s-1))]` with `a = sum c_i s^-i`, so its length depends on
//! the rank only. Sibling cylinders overlap because `r >= s`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::numerals::{expand, Digit, DigitPolicy, DigitWord, Params, PeriodicRep};
use crate::rational::{format_rational, pow, Rational};

/// Closed interval `[lo, hi]`; `lo == hi` is a single point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::Usage(format!(
                "interval endpoints out of order: {} > {}",
                format_rational(&lo),
                format_rational(&hi)
            )));
        }
        Ok(Interval { lo, hi })
    }

    pub fn len(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// `None` when the intervals are disjoint.
    pub fn intersection(&self, other: &Interval) -> Option<Interval> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn to_json(&self) -> Value {
        json!({ "lo": format_rational(&self.lo), "hi": format_rational(&self.hi) })
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", format_rational(&self.lo), format_rational(&self.hi))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cylinder {
    params: Params,
    base: DigitWord,
}

impl Cylinder {
    pub fn new(params: Params, base: Vec<Digit>) -> Result<Self> {
        let base = DigitWord::checked(base, params.r())?;
        Ok(Cylinder { params, base })
    }

    /// The rank-0 cylinder, i.e. the whole range `[0, r/(s-1)]`.
    pub fn root(params: Params) -> Self {
        Cylinder {
            params,
            base: DigitWord::default(),
        }
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn base(&self) -> &DigitWord {
        &self.base
    }

    pub fn rank(&self) -> usize {
        self.base.len()
    }

    pub fn left_endpoint(&self) -> Rational {
        self.base.value(self.params.s())
    }

    /// `r / (s^m (s-1))`.
    pub fn length(&self) -> Rational {
        cylinder_length(self.params, self.rank() as u32)
    }

    pub fn interval(&self) -> Interval {
        let lo = self.left_endpoint();
        let hi = &lo + self.length();
        Interval { lo, hi }
    }

    /// Whether both cylinders are the same set. Cylinders of different
    /// ranks never coincide; equal ranks coincide iff left endpoints agree.
    pub fn same_as(&self, other: &Cylinder) -> Result<bool> {
        if self.params != other.params {
            return Err(Error::Usage(format!(
                "cylinders over different systems {} and {}",
                self.params, other.params
            )));
        }
        if self.rank() != other.rank() {
            return Ok(false);
        }
        // sum s^-i (c_i - d_i) == 0, scaled by s^m
        let s = self.params.s_big();
        let diff = self
            .base
            .iter()
            .zip(other.base.iter())
            .fold(BigInt::zero(), |acc, (&c, &d)| {
                acc * &s + BigInt::from(c) - BigInt::from(d)
            });
        Ok(diff.is_zero())
    }

    pub fn child(&self, digit: Digit) -> Result<Cylinder> {
        self.params.check_digit(digit)?;
        let mut base = self.base.to_vec();
        base.push(digit);
        Ok(Cylinder {
            params: self.params,
            base: DigitWord::new(base),
        })
    }

    /// The `r+1` cylinders of the next rank, ordered by last digit.
    pub fn children(&self) -> Vec<Cylinder> {
        (0..=self.params.r())
            .map(|d| self.child(d).expect("digit within alphabet"))
            .collect()
    }

    /// Overlap of children `i` and `i+1`:
    /// `[value(c (i+1) (0)), value(c i (r))]`, of length `(r-s+1)/(s^(m+1) (s-1))`.
    pub fn adjacent_overlap(&self, i: Digit) -> Result<Interval> {
        let r = self.params.r();
        if i >= r {
            return Err(Error::Usage(format!(
                "child {i} has no right neighbour when r={r}"
            )));
        }
        let s = self.params.s();
        let mut right = self.base.to_vec();
        right.push(i + 1);
        let lo = PeriodicRep::terminating(r, right)?.value(s);
        let mut left = self.base.to_vec();
        left.push(i);
        let hi = PeriodicRep::new(r, left, vec![r])?.value(s);
        Interval::new(lo, hi)
    }
}

impl fmt::Display for Cylinder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base)
    }
}

pub fn cylinder_length(params: Params, rank: u32) -> Rational {
    Rational::from_integer(params.r_big())
        / (pow(params.s() as u64, rank) * Rational::from_integer((params.s() - 1).into()))
}

/// The `p >= 1` for which adjacent rank-`k` cylinders intersect in a
/// rank-`(k+p)` cylinder, i.e. `r = s^p (s-1)/(s^p - 1)`.
///
/// The identity rearranges to `s^p (r-s+1) = r`, so `p` exists iff
/// `r/(r-s+1)` is a positive power of `s`.
pub fn overlap_is_cylinder(params: Params) -> Option<u32> {
    let (s, r) = (params.s() as u64, params.r() as u64);
    let gap = r - s + 1;
    let (mut t, rem) = r.div_rem(&gap);
    if rem != 0 {
        return None;
    }
    let mut p = 0;
    while t > 1 && t % s == 0 {
        t /= s;
        p += 1;
    }
    (t == 1 && p >= 1).then_some(p)
}

/// The rank-`m` cylinder whose base is the first `m` digits of `x` under
/// `policy`. Its interval contains `x`.
pub fn cylinder_containing(
    x: &Rational,
    m: usize,
    params: Params,
    policy: DigitPolicy,
) -> Result<Cylinder> {
    let e = expand(x, params, policy, m)?;
    Ok(Cylinder {
        params,
        base: e.digits,
    })
}
