use std::collections::BTreeMap;
use std::fmt;

use super::{Digit, Params, PeriodicRep};
use crate::error::Result;

/// Two consecutive-digit pairs with equal weight, `a s + b = c s + d`.
///
/// Either pair can replace the other at any position of a representation
/// without changing its value. The canonical orientation has `left.0 < right.0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairSubstitution {
    pub left: (Digit, Digit),
    pub right: (Digit, Digit),
}

impl PairSubstitution {
    /// Common weight `a s + b` of both pairs.
    pub fn weight(&self, params: Params) -> u64 {
        self.left.0 as u64 * params.s() as u64 + self.left.1 as u64
    }

    /// The pair that replaces `pair`, if `pair` is one side of the substitution.
    pub fn swap(&self, pair: (Digit, Digit)) -> Option<(Digit, Digit)> {
        if pair == self.left {
            Some(self.right)
        } else if pair == self.right {
            Some(self.left)
        } else {
            None
        }
    }

    /// Applies the substitution to a finite word at `pos`, if it matches there.
    pub fn apply_to_word(&self, word: &[Digit], pos: usize) -> Option<Vec<Digit>> {
        let pair = (*word.get(pos)?, *word.get(pos + 1)?);
        let (a, b) = self.swap(pair)?;
        let mut out = word.to_vec();
        out[pos] = a;
        out[pos + 1] = b;
        Some(out)
    }

    /// Applies the substitution to an infinite representation at `pos`.
    pub fn apply_to_rep(&self, rep: &PeriodicRep, pos: usize) -> Option<Result<PeriodicRep>> {
        let (a, b) = self.swap((rep.digit(pos), rep.digit(pos + 1)))?;
        Some(rep.with_block(pos, &[a, b]))
    }
}

impl fmt::Display for PairSubstitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} <-> {} {}",
            self.left.0, self.left.1, self.right.0, self.right.1
        )
    }
}

/// Digit pairs over `{0..r}` grouped by their weight `a s + b`, keeping only
/// weights reached by more than one pair. Each group is sorted by first digit.
fn weight_classes(params: Params) -> BTreeMap<u64, Vec<(Digit, Digit)>> {
    let s = params.s() as u64;
    let mut classes: BTreeMap<u64, Vec<(Digit, Digit)>> = BTreeMap::new();
    for a in 0..=params.r() {
        for b in 0..=params.r() {
            classes.entry(a as u64 * s + b as u64).or_default().push((a, b));
        }
    }
    classes.retain(|_, group| group.len() > 1);
    classes
}

/// All interchangeable pairs of the system, each listed once.
///
/// For `s <= r <= 2s-1` there are exactly `r (r-s+1)` of them, all of the
/// form `(j, s+i) <-> (j+1, i)`.
pub fn interchangeable_pairs(params: Params) -> Vec<PairSubstitution> {
    let mut out = Vec::new();
    for group in weight_classes(params).values() {
        for (i, &left) in group.iter().enumerate() {
            for &right in &group[i + 1..] {
                out.push(PairSubstitution { left, right });
            }
        }
    }
    out.sort();
    out
}

/// Maximal chains of mutually interchangeable pairs.
///
/// For `r = 2s` the result is the `2s-1` three-element chains
/// `(j, 2s) <-> (j+1, s) <-> (j+2, 0)`; for every other `r` it is each weight
/// class reached by two or more pairs, ordered by first digit.
pub fn substitution_chains(params: Params) -> Vec<Vec<(Digit, Digit)>> {
    let mut chains: Vec<Vec<(Digit, Digit)>> = weight_classes(params).into_values().collect();
    if params.r() == 2 * params.s() {
        chains.retain(|c| c.len() == 3);
    }
    chains.sort();
    chains
}
