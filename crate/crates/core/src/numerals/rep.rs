use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::{parse_digits, write_digits, Digit, Params};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// An eventually periodic digit sequence `pre (period)` over `{0..bound}`.
///
/// Values are kept in normal form: the period is its own primitive root and
/// trailing preperiod digits that continue the period are rolled into it.
/// Two normalized representations are equal iff they spell the same
/// infinite sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PeriodicRep {
    bound: Digit,
    preperiod: Vec<Digit>,
    period: Vec<Digit>,
}

impl PeriodicRep {
    pub fn new(bound: Digit, preperiod: Vec<Digit>, period: Vec<Digit>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Usage("period must be nonempty".into()));
        }
        if let Some(d) = preperiod.iter().chain(&period).find(|&&d| d > bound) {
            return Err(Error::Usage(format!("digit {d} exceeds alphabet bound {bound}")));
        }
        let mut rep = PeriodicRep {
            bound,
            preperiod,
            period,
        };
        rep.normalize();
        Ok(rep)
    }

    /// `word (0)`, the terminating sequence.
    pub fn terminating(bound: Digit, word: Vec<Digit>) -> Result<Self> {
        Self::new(bound, word, vec![0])
    }

    /// `(period)` with no preperiod.
    pub fn purely_periodic(bound: Digit, period: Vec<Digit>) -> Result<Self> {
        Self::new(bound, Vec::new(), period)
    }

    /// Parses `"d1 d2 (p1 p2)"`; parentheses may touch the digits.
    pub fn parse(bound: Digit, text: &str) -> Result<Self> {
        let open = text
            .find('(')
            .ok_or_else(|| Error::Parse(format!("missing '(' in {text:?}")))?;
        let close = text
            .rfind(')')
            .ok_or_else(|| Error::Parse(format!("missing ')' in {text:?}")))?;
        if close < open || !text[close + 1..].trim().is_empty() {
            return Err(Error::Parse(format!("malformed representation {text:?}")));
        }
        let preperiod = parse_digits(&text[..open])?;
        let period = parse_digits(&text[open + 1..close])?;
        if period.is_empty() {
            return Err(Error::Parse(format!("empty period in {text:?}")));
        }
        Self::new(bound, preperiod, period)
    }

    pub fn bound(&self) -> Digit {
        self.bound
    }

    pub fn preperiod(&self) -> &[Digit] {
        &self.preperiod
    }

    pub fn period(&self) -> &[Digit] {
        &self.period
    }

    /// The `k`-th digit, counting from zero.
    pub fn digit(&self, k: usize) -> Digit {
        match self.preperiod.get(k) {
            Some(&d) => d,
            None => self.period[(k - self.preperiod.len()) % self.period.len()],
        }
    }

    pub fn digits(&self) -> impl Iterator<Item = Digit> + '_ {
        self.preperiod
            .iter()
            .copied()
            .chain(self.period.iter().copied().cycle())
    }

    pub fn prefix(&self, n: usize) -> Vec<Digit> {
        self.digits().take(n).collect()
    }

    /// The same sequence written with a preperiod of at least `len` digits.
    /// Returns `(preperiod, period)` without normalizing.
    pub fn unrolled(&self, len: usize) -> (Vec<Digit>, Vec<Digit>) {
        let len = len.max(self.preperiod.len());
        let pre = self.prefix(len);
        let p = self.period.len();
        let shift = (len - self.preperiod.len()) % p;
        let mut period = self.period.clone();
        period.rotate_left(shift);
        (pre, period)
    }

    /// Replaces the digits starting at `pos` by `block`.
    pub fn with_block(&self, pos: usize, block: &[Digit]) -> Result<Self> {
        let (mut pre, period) = self.unrolled(pos + block.len());
        pre[pos..pos + block.len()].copy_from_slice(block);
        Self::new(self.bound, pre, period)
    }

    /// Prepends a digit, the shift `(a_1 a_2 ...) -> (d a_1 a_2 ...)`.
    pub fn shifted_in(&self, d: Digit) -> Result<Self> {
        let mut pre = Vec::with_capacity(self.preperiod.len() + 1);
        pre.push(d);
        pre.extend_from_slice(&self.preperiod);
        Self::new(self.bound, pre, self.period.clone())
    }

    /// Digitwise `d -> bound - d`.
    pub fn complement(&self) -> Self {
        let flip = |v: &[Digit]| v.iter().map(|&d| self.bound - d).collect::<Vec<_>>();
        PeriodicRep::new(self.bound, flip(&self.preperiod), flip(&self.period))
            .expect("complement stays inside the alphabet")
    }

    /// Exact value of the series `sum_n d_n / base^n`.
    pub fn value(&self, base: u32) -> Rational {
        let b = BigInt::from(base);
        let horner = |digits: &[Digit]| {
            digits
                .iter()
                .fold(BigInt::from(0), |acc, &d| acc * &b + BigInt::from(d))
        };
        let m = self.preperiod.len() as u32;
        let p = self.period.len() as u32;
        let head = horner(&self.preperiod);
        let cycle = horner(&self.period);
        let bp_minus_one = b.pow(p) - BigInt::one();
        Rational::new(head * &bp_minus_one + cycle, b.pow(m) * bp_minus_one)
    }

    /// Lexicographic comparison of the infinite digit sequences.
    pub fn cmp_sequence(&self, other: &Self) -> Ordering {
        let horizon = self.preperiod.len().max(other.preperiod.len())
            + self.period.len() * other.period.len();
        self.digits()
            .take(horizon)
            .cmp(other.digits().take(horizon))
    }

    fn normalize(&mut self) {
        let n = self.period.len();
        if let Some(root) = (1..=n)
            .filter(|d| n % d == 0)
            .find(|&d| (d..n).all(|i| self.period[i] == self.period[i - d]))
        {
            self.period.truncate(root);
        }
        while self.preperiod.last().is_some() && self.preperiod.last() == self.period.last() {
            self.preperiod.pop();
            self.period.rotate_right(1);
        }
    }
}

impl PartialOrd for PeriodicRep {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PeriodicRep {
    fn cmp(&self, other: &Self) -> Ordering {
        self.bound
            .cmp(&other.bound)
            .then_with(|| self.cmp_sequence(other))
    }
}

impl fmt::Display for PeriodicRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_digits(f, &self.preperiod)?;
        if !self.preperiod.is_empty() {
            f.write_str(" ")?;
        }
        f.write_str("(")?;
        write_digits(f, &self.period)?;
        f.write_str(")")
    }
}

/// Exact value of `rep` read in `base`. Digits may exceed `base - 1`.
pub fn value_of(rep: &PeriodicRep, base: u32) -> Rational {
    rep.value(base)
}

/// Digitwise reflection `a_k -> r - a_k`; maps a representation of `x` to one
/// of `r/(s-1) - x`.
pub fn reflect(rep: &PeriodicRep, params: Params) -> Result<PeriodicRep> {
    if rep.bound() != params.r() {
        return Err(Error::Usage(format!(
            "representation has alphabet bound {}, expected r={}",
            rep.bound(),
            params.r()
        )));
    }
    Ok(rep.complement())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    fn rep(bound: Digit, text: &str) -> PeriodicRep {
        PeriodicRep::parse(bound, text).unwrap()
    }

    #[test]
    fn value_examples() {
        assert_eq!(value_of(&rep(3, "(3)"), 2), int(3));
        assert_eq!(value_of(&rep(3, "(1 2)"), 3), ratio(5, 8));
        assert_eq!(value_of(&rep(3, "2 (0)"), 2), int(1));
        assert_eq!(value_of(&rep(3, "0 1 (3)"), 2), int(1));
    }

    #[test]
    fn normalization_rolls_and_roots() {
        let r = PeriodicRep::new(3, vec![0, 2, 1, 2], vec![1, 2, 1, 2]).unwrap();
        assert_eq!(r.preperiod(), &[0]);
        assert_eq!(r.period(), &[2, 1]);
        let r = PeriodicRep::new(3, vec![2, 1, 2], vec![1, 2]).unwrap();
        assert!(r.preperiod().is_empty());
        let z = PeriodicRep::new(3, vec![0, 0], vec![0, 0, 0]).unwrap();
        assert_eq!(z.to_string(), "(0)");
    }

    #[test]
    fn text_round_trip() {
        let r = rep(12, "0 1 (3)");
        assert_eq!(r.to_string(), "0 1 (3)");
        assert_eq!(rep(12, "10 (11 12)").to_string(), "10 (11 12)");
        assert_eq!(rep(12, "1(0)").to_string(), "1 (0)");
        assert!(PeriodicRep::parse(3, "1 2").is_err());
        assert!(PeriodicRep::parse(3, "1 ()").is_err());
        assert!(PeriodicRep::parse(3, "(4)").is_err());
        assert!(PeriodicRep::parse(3, "(1) 2").is_err());
    }

    #[test]
    fn reflect_examples() {
        let p = Params::new(2, 3).unwrap();
        assert_eq!(reflect(&rep(3, "(0)"), p).unwrap(), rep(3, "(3)"));
        let two = reflect(&rep(3, "2 (0)"), p).unwrap();
        assert_eq!(two, rep(3, "1 (3)"));
        assert_eq!(two.value(2) + int(1), int(3));
        assert!(reflect(&rep(4, "(0)"), p).is_err());
    }

    #[test]
    fn sequence_order() {
        assert!(rep(3, "(1)") < rep(3, "1 2 (0)"));
        assert!(rep(3, "0 (3)") < rep(3, "(1)"));
        assert_eq!(rep(3, "(1 0)").cmp(&rep(3, "1 (0 1)")), Ordering::Equal);
    }

    fn arb_rep(bound: Digit) -> impl Strategy<Value = PeriodicRep> {
        (
            prop::collection::vec(0..=bound, 0..6),
            prop::collection::vec(0..=bound, 1..5),
        )
            .prop_map(move |(pre, per)| PeriodicRep::new(bound, pre, per).unwrap())
    }

    fn arb_params_rep() -> impl Strategy<Value = (Params, PeriodicRep)> {
        (2u32..6, 0u32..5).prop_flat_map(|(s, extra)| {
            let p = Params::new(s, s + extra).unwrap();
            arb_rep(p.r()).prop_map(move |r| (p, r))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]


        #[test]
        fn reflection_sums_to_x_max((p, r) in arb_params_rep()) {
            let back = reflect(&r, p).unwrap();
            prop_assert_eq!(r.value(p.s()) + back.value(p.s()), p.x_max());
            prop_assert_eq!(reflect(&back, p).unwrap(), r);
        }

        #[test]
        fn normal_form_preserves_value(pre in prop::collection::vec(0u32..=5, 0..6),
                                       per in prop::collection::vec(0u32..=5, 1..5),
                                       reps in 1usize..4, base in 2u32..7) {
            let mut long = per.clone();
            for _ in 1..reps { long.extend_from_slice(&per); }
            let raw = PeriodicRep { bound: 5, preperiod: pre.clone(), period: long };
            let norm = PeriodicRep::new(5, pre, per).unwrap();
            prop_assert_eq!(raw.value(base), norm.value(base));
            prop_assert_eq!(raw.prefix(40), norm.prefix(40));
        }

        #[test]
        fn block_replacement_matches_prefix(r in arb_rep(4), pos in 0usize..10, d in 0u32..=4) {
            let replaced = r.with_block(pos, &[d]).unwrap();
            let mut expect = r.prefix(30);
            expect[pos] = d;
            prop_assert_eq!(replaced.prefix(30), expect);
        }
    }
}
