//! Census of all representations of a rational number.
//!
//! Everything here runs on the [`RemainderAutomaton`] of `x`: its infinite
//! paths are the representations of `x`, so counting, listing and
//! classifying representations become graph questions.

mod automaton;
mod classify;
mod enumerate;

use num_bigint::BigUint;

use crate::error::Result;
use crate::numerals::Params;
use crate::rational::Rational;

pub use automaton::{RemainderAutomaton, DEFAULT_MAX_STATES};
pub use classify::{classify, classify_automaton, strongly_connected_components, Cardinality};
pub use enumerate::{enumerate_automaton, enumerate_representations, Census};

/// Number of length-`n` digit words extendable to a representation of `x`.
pub fn count_prefixes(x: &Rational, params: Params, n: usize) -> Result<BigUint> {
    Ok(RemainderAutomaton::build(x, params)?.count_prefixes(n))
}
