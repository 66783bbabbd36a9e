//! Exact arithmetic for numeral systems with natural base `s` and the
//! redundant digit alphabet `{0, 1, ..., r}`, `2 <= s <= r`.
//!
//! - [`numerals`]: representations, their values, the expansion algorithm
//!   and interchangeable digit pairs.
//! - [`cylinders`]: cylinder sets as exact intervals and their overlaps.
//! - [`repcensus`]: the remainder automaton of a rational, used to count,
//!   list and classify all of its representations.
//! - [`projector`]: the map sending a base-`(r+1)` expansion to the value of
//!   the same digits in the redundant system, with its jumps, functional
//!   equations, self-affine graph and level sets.
//! - [`dimension`]: closed-form dimension values as ratios of logarithms.
//!
//! All arithmetic is on arbitrary-precision rationals; floating point only
//! appears in reported dimension values and box-counting slopes.

pub mod cylinders;
pub mod dimension;
mod error;
pub mod numerals;
pub mod projector;
mod rational;
pub mod repcensus;

pub use error::{Error, Result};
pub use rational::{format_rational, int, parse_rational, pow, ratio, Rational};
