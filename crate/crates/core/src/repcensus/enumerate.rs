use std::collections::BTreeSet;

use super::classify::{classify_automaton, Cardinality};
use super::RemainderAutomaton;
use crate::error::Result;
use crate::numerals::{Digit, Params, PeriodicRep};
use crate::rational::Rational;

/// Step budget shared by the preperiod walk and the cycle search.
const SEARCH_STEPS: usize = 200_000;

/// Representations found for one number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    /// Distinct normalized representations in lexicographic order.
    pub representations: Vec<PeriodicRep>,
    /// True when the list is every representation of the number.
    pub complete: bool,
    pub cardinality: Cardinality,
}

/// Eventually periodic representations of `x`.
///
/// Each one is a lasso in the remainder automaton: a path that returns to a
/// state it visited after at most `max_preperiod` digits (default: the state
/// count plus one), closing the period there. Paths are explored depth first in
/// increasing digit order, up to `max_preperiod` plus the state count digits.
/// When the number has finitely many representations this reaches all of
/// them. For countable and continuum cases the list is the lexicographically
/// least `max_count` among the lassos reached within the search budget.
pub fn enumerate_representations(
    x: &Rational,
    params: Params,
    max_count: usize,
    max_preperiod: Option<usize>,
) -> Result<Census> {
    let automaton = RemainderAutomaton::build(x, params)?;
    Ok(enumerate_automaton(&automaton, max_count, max_preperiod))
}

/// [`enumerate_representations`] on an automaton built elsewhere.
pub fn enumerate_automaton(
    automaton: &RemainderAutomaton,
    max_count: usize,
    max_preperiod: Option<usize>,
) -> Census {
    let cardinality = classify_automaton(automaton);
    let max_preperiod = max_preperiod.unwrap_or(automaton.len() + 1);
    let mut search = LassoSearch {
        automaton,
        found: BTreeSet::new(),
        steps: 0,
        keep: max_count.max(1).saturating_mul(8),
        truncated: false,
    };
    search.run(max_preperiod, max_preperiod.saturating_add(automaton.len()));

    let truncated = search.truncated || search.found.len() > max_count;
    let representations: Vec<PeriodicRep> = search.found.into_iter().take(max_count).collect();
    let complete = !truncated
        && matches!(&cardinality, Cardinality::Finite(n) if *n == representations.len().into());
    Census {
        representations,
        complete,
        cardinality,
    }
}

struct LassoSearch<'a> {
    automaton: &'a RemainderAutomaton,
    found: BTreeSet<PeriodicRep>,
    steps: usize,
    keep: usize,
    /// Set when the step budget ran out or `found` dropped an entry.
    truncated: bool,
}

impl LassoSearch<'_> {
    fn run(&mut self, max_preperiod: usize, max_len: usize) {
        let start = self.automaton.start();
        // positions on the current path where each state occurs
        let mut seen: Vec<Vec<usize>> = vec![Vec::new(); self.automaton.len()];
        seen[start].push(0);
        let mut digits: Vec<Digit> = Vec::new();
        // (state, next edge position)
        let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
        while let Some(&mut (u, ref mut pos)) = stack.last_mut() {
            let edge = if digits.len() < max_len {
                self.automaton.edges(u).get(*pos).copied()
            } else {
                None
            };
            let Some((d, v)) = edge else {
                stack.pop();
                seen[u].pop();
                digits.pop();
                continue;
            };
            *pos += 1;
            self.steps += 1;
            if self.steps > SEARCH_STEPS {
                self.truncated = true;
                return;
            }
            digits.push(d);
            for i in seen[v].iter().copied().filter(|&i| i <= max_preperiod) {
                let rep = PeriodicRep::new(
                    self.automaton.params().r(),
                    digits[..i].to_vec(),
                    digits[i..].to_vec(),
                )
                .expect("automaton digits are in the alphabet");
                self.found.insert(rep);
                if self.found.len() > self.keep {
                    self.found.pop_last();
                    self.truncated = true;
                }
            }
            seen[v].push(digits.len());
            stack.push((v, 0));
        }
    }
}
