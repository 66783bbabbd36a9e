//! Numeral systems with natural base `s` and the redundant alphabet `{0..r}`.
//!
//! A number `x` in `[0, r/(s-1)]` is written as `sum_n a_n s^-n` with digits
//! `a_n <= r`. Because `r >= s` most numbers have many such representations.
//! This module holds the parameter pair, digit words, eventually periodic
//! representations and their exact values, the digit-by-digit expansion
//! algorithm, and the combinatorics of interchangeable digit pairs.

mod expand;
mod pairs;
mod rep;

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::rational::{ratio, Rational};

pub use expand::{
    admissible_digits, expand, expand_periodic, is_rs_rational, DigitPolicy, Expansion,
};
pub use pairs::{interchangeable_pairs, substitution_chains, PairSubstitution};
pub use rep::{reflect, value_of, PeriodicRep};
pub(crate) use expand::Remainders;

/// A single digit. The alphabet bound is carried by the enclosing word or
/// representation, not by the digit.
pub type Digit = u32;

/// The pair `(s, r)` with `2 <= s <= r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Params {
    s: u32,
    r: u32,
}

impl Params {
    pub fn new(s: u32, r: u32) -> Result<Self> {
        if s < 2 {
            return Err(Error::Usage(format!("base s must be at least 2, got {s}")));
        }
        if r < s {
            return Err(Error::Usage(format!("need s <= r, got s={s} r={r}")));
        }
        Ok(Params { s, r })
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Largest representable value, `r/(s-1)`, the value of `(r)`.
    pub fn x_max(&self) -> Rational {
        ratio(self.r as i64, self.s as i64 - 1)
    }

    /// Overlap ratio of adjacent cylinders to their parent, `(r-s+1)/(s r)`.
    pub fn overlap_ratio(&self) -> Rational {
        ratio((self.r - self.s + 1) as i64, self.s as i64 * self.r as i64)
    }

    /// Base of the classical expansion paired with this system, `r+1`.
    pub fn wide_base(&self) -> u32 {
        self.r + 1
    }

    pub(crate) fn s_big(&self) -> BigInt {
        BigInt::from(self.s)
    }

    pub(crate) fn r_big(&self) -> BigInt {
        BigInt::from(self.r)
    }

    pub(crate) fn check_range(&self, x: &Rational) -> Result<()> {
        if *x < Rational::from_integer(0.into()) || *x > self.x_max() {
            return Err(Error::Domain(format!(
                "{} is outside [0, {}]",
                crate::format_rational(x),
                crate::format_rational(&self.x_max())
            )));
        }
        Ok(())
    }

    pub(crate) fn check_digit(&self, d: Digit) -> Result<()> {
        if d > self.r {
            return Err(Error::Usage(format!("digit {d} exceeds r={}", self.r)));
        }
        Ok(())
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(s={}, r={})", self.s, self.r)
    }
}

/// A finite digit block, serialized as space-separated decimal digits.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DigitWord(Vec<Digit>);

impl DigitWord {
    pub fn new(digits: Vec<Digit>) -> Self {
        DigitWord(digits)
    }

    /// Checks every digit against the alphabet bound.
    pub fn checked(digits: Vec<Digit>, bound: Digit) -> Result<Self> {
        if let Some(d) = digits.iter().find(|&&d| d > bound) {
            return Err(Error::Usage(format!("digit {d} exceeds alphabet bound {bound}")));
        }
        Ok(DigitWord(digits))
    }

    pub fn into_vec(self) -> Vec<Digit> {
        self.0
    }

    /// `sum_i d_i / base^i`, the value of the word followed by zeros.
    pub fn value(&self, base: u32) -> Rational {
        let b = BigInt::from(base);
        let numer = self
            .0
            .iter()
            .fold(BigInt::from(0), |acc, &d| acc * &b + BigInt::from(d));
        Rational::new(numer, b.pow(self.0.len() as u32))
    }
}

impl Deref for DigitWord {
    type Target = [Digit];

    fn deref(&self) -> &[Digit] {
        &self.0
    }
}

impl From<Vec<Digit>> for DigitWord {
    fn from(digits: Vec<Digit>) -> Self {
        DigitWord(digits)
    }
}

impl fmt::Display for DigitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_digits(f, &self.0)
    }
}

impl FromStr for DigitWord {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        parse_digits(text).map(DigitWord)
    }
}

pub(crate) fn write_digits(f: &mut fmt::Formatter<'_>, digits: &[Digit]) -> fmt::Result {
    for (i, d) in digits.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{d}")?;
    }
    Ok(())
}

pub(crate) fn parse_digits(text: &str) -> Result<Vec<Digit>> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<Digit>()
                .map_err(|_| Error::Parse(format!("bad digit {tok:?}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_reject_bad_pairs() {
        assert!(Params::new(1, 3).is_err());
        assert!(Params::new(3, 2).is_err());
        assert!(Params::new(2, 2).is_ok());
    }

    #[test]
    fn x_max_is_exact() {
        assert_eq!(Params::new(2, 3).unwrap().x_max(), ratio(3, 1));
        assert_eq!(Params::new(3, 4).unwrap().x_max(), ratio(2, 1));
        assert_eq!(Params::new(3, 3).unwrap().x_max(), ratio(3, 2));
    }

    #[test]
    fn digit_word_text_form() {
        let w: DigitWord = "2 0 13".parse().unwrap();
        assert_eq!(&*w, &[2, 0, 13]);
        assert_eq!(w.to_string(), "2 0 13");
        assert!("2 x".parse::<DigitWord>().is_err());
        assert!(DigitWord::checked(vec![0, 4], 3).is_err());
    }

    #[test]
    fn word_value() {
        let w = DigitWord::new(vec![1, 3]);
        assert_eq!(w.value(2), ratio(5, 4));
        assert_eq!(DigitWord::default().value(7), ratio(0, 1));
    }
}
