use std::collections::HashMap;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Digit, DigitWord, Params, PeriodicRep};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// How the expansion picks among admissible digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DigitPolicy {
    /// Largest admissible digit.
    Greedy,
    /// Smallest admissible digit.
    Lazy,
    /// Uniform admissible digit from a ChaCha8 stream seeded with the value.
    SeededRandom(u64),
}

impl DigitPolicy {
    pub fn is_deterministic(&self) -> bool {
        !matches!(self, DigitPolicy::SeededRandom(_))
    }
}

/// Result of `depth` expansion steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    pub digits: DigitWord,
    /// `s^depth * (x - value(digits))`, always inside `[0, r/(s-1)]`.
    pub remainder: Rational,
}

/// Remainders of one rational `p/q`, stored as numerators over `q`.
///
/// Every remainder `s y - a` of a value with denominator `q` again has a
/// denominator dividing `q`, so the whole expansion runs on integers.
#[derive(Debug, Clone)]
pub(crate) struct Remainders {
    params: Params,
    denom: BigInt,
    // (s-1) q, and q r; used by the upper admissibility bound
    sm1_q: BigInt,
    q_r: BigInt,
}

impl Remainders {
    /// Splits `x` into the engine and its starting numerator.
    pub(crate) fn for_value(x: &Rational, params: Params) -> Result<(Self, BigInt)> {
        params.check_range(x)?;
        let denom = x.denom().clone();
        let sm1_q = &denom * BigInt::from(params.s() - 1);
        let q_r = &denom * params.r_big();
        Ok((
            Remainders {
                params,
                denom,
                sm1_q,
                q_r,
            },
            x.numer().clone(),
        ))
    }

    pub(crate) fn denom(&self) -> &BigInt {
        &self.denom
    }

    pub(crate) fn to_rational(&self, numer: &BigInt) -> Rational {
        Rational::new(numer.clone(), self.denom.clone())
    }

    /// Digits `a` with `0 <= s y - a <= r/(s-1)` for `y = numer/q`.
    pub(crate) fn admissible(&self, numer: &BigInt) -> RangeInclusive<Digit> {
        let sy = numer * self.params.s_big();
        let hi = sy.div_floor(&self.denom);
        let hi = hi.to_u32().map_or(self.params.r(), |h| h.min(self.params.r()));
        // a >= ((s-1) s y q - q r) / ((s-1) q), with y q = numer
        let lo_num = &sy * BigInt::from(self.params.s() - 1) - &self.q_r;
        let lo = if lo_num.is_positive() {
            lo_num.div_ceil(&self.sm1_q).to_u32().unwrap_or(u32::MAX)
        } else {
            0
        };
        lo..=hi
    }

    pub(crate) fn step(&self, numer: &BigInt, digit: Digit) -> BigInt {
        numer * self.params.s_big() - &self.denom * BigInt::from(digit)
    }
}

/// Digits admissible as the next digit of an expansion of `y`.
///
/// These are the `a` in `{0..r}` with `0 <= s y - a <= r/(s-1)`; the set is a
/// nonempty contiguous range for every `y` in `[0, r/(s-1)]`.
pub fn admissible_digits(y: &Rational, params: Params) -> Result<RangeInclusive<Digit>> {
    let (engine, numer) = Remainders::for_value(y, params)?;
    Ok(engine.admissible(&numer))
}

struct Picker {
    policy: DigitPolicy,
    rng: Option<ChaCha8Rng>,
}

impl Picker {
    fn new(policy: DigitPolicy) -> Self {
        let rng = match policy {
            DigitPolicy::SeededRandom(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        Picker { policy, rng }
    }

    fn pick(&mut self, range: RangeInclusive<Digit>) -> Digit {
        match self.policy {
            DigitPolicy::Greedy => *range.end(),
            DigitPolicy::Lazy => *range.start(),
            DigitPolicy::SeededRandom(_) => self
                .rng
                .as_mut()
                .expect("random policy carries a generator")
                .gen_range(range),
        }
    }
}

/// Runs `depth` steps of `x_k = s x_{k-1} - a_k` starting from `x_0 = x`.
///
/// After `n` steps `0 <= x - sum_{i<=n} a_i s^-i <= r/(s^n (s-1))`.
pub fn expand(x: &Rational, params: Params, policy: DigitPolicy, depth: usize) -> Result<Expansion> {
    let (engine, mut numer) = Remainders::for_value(x, params)?;
    let mut picker = Picker::new(policy);
    let mut digits = Vec::with_capacity(depth);
    for _ in 0..depth {
        let d = picker.pick(engine.admissible(&numer));
        numer = engine.step(&numer, d);
        digits.push(d);
    }
    Ok(Expansion {
        digits: DigitWord::new(digits),
        remainder: engine.to_rational(&numer),
    })
}

/// Expands `x` until a remainder repeats and returns the resulting eventually
/// periodic representation. Only deterministic policies are accepted.
pub fn expand_periodic(x: &Rational, params: Params, policy: DigitPolicy) -> Result<PeriodicRep> {
    if !policy.is_deterministic() {
        return Err(Error::Usage(
            "periodic expansion needs a deterministic policy".into(),
        ));
    }
    let (engine, mut numer) = Remainders::for_value(x, params)?;
    let mut picker = Picker::new(policy);
    let mut seen: HashMap<BigInt, usize> = HashMap::new();
    let mut digits = Vec::new();
    loop {
        if let Some(&start) = seen.get(&numer) {
            let period = digits.split_off(start);
            return PeriodicRep::new(params.r(), digits, period);
        }
        seen.insert(numer.clone(), digits.len());
        let d = picker.pick(engine.admissible(&numer));
        numer = engine.step(&numer, d);
        digits.push(d);
    }
}

/// Decides whether `x` has a representation ending in `(0)`.
///
/// Returns the shortest such representation (lexicographically least among
/// the shortest) when one exists. The search runs on the remainder automaton
/// of `x`, looking for a path to the remainder `0`.
pub fn is_rs_rational(x: &Rational, params: Params) -> Result<Option<PeriodicRep>> {
    let automaton = crate::repcensus::RemainderAutomaton::build(x, params)?;
    let word = automaton.shortest_word_to(&Rational::zero());
    word.map(|w| PeriodicRep::terminating(params.r(), w))
        .transpose()
}
