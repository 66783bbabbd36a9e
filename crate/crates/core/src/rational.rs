//! Exact rational helpers.
//!
//! Every quantity in the library is a [`Rational`]. On the text boundary a
//! rational is always written as `p/q` (integers get `/1`), and parsing
//! accepts `p/q` or a bare integer. Decimal notation is rejected on purpose.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// `base^exp` as a rational.
pub fn pow(base: u64, exp: u32) -> Rational {
    Rational::from_integer(BigInt::from(base).pow(exp))
}

pub fn format_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("malformed rational {text:?}, expected p/q"));
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let valid = |t: &str| {
        let digits = t.strip_prefix('-').unwrap_or(t);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(numer) || !valid(denom) {
        return Err(bad());
    }
    let numer: BigInt = numer.parse().map_err(|_| bad())?;
    let denom: BigInt = denom.parse().map_err(|_| bad())?;
    if denom.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(numer, denom))
}

/// Floor of a rational as a big integer.
pub(crate) fn floor(x: &Rational) -> BigInt {
    x.floor().to_integer()
}

pub(crate) fn is_unit_interval(x: &Rational) -> bool {
    !x.is_negative() && *x <= Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_integers_with_unit_denominator() {
        assert_eq!(format_rational(&int(3)), "3/1");
        assert_eq!(format_rational(&ratio(10, 16)), "5/8");
        assert_eq!(format_rational(&ratio(-1, 2)), "-1/2");
    }

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("5/8").unwrap(), ratio(5, 8));
        assert_eq!(parse_rational(" 6/4 ").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("-1/3").unwrap(), ratio(-1, 3));
    }

    #[test]
    fn rejects_decimals_and_garbage() {
        for bad in ["0.5", "1/0", "", "/", "a/b", "1/2/3", "1e3", "+1/2"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should not parse");
        }
    }
}
