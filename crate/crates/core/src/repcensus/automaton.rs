use std::collections::{HashMap, VecDeque};

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::numerals::{Digit, Params, Remainders};
use crate::rational::{floor, format_rational, Rational};

/// Default cap on the number of automaton states.
pub const DEFAULT_MAX_STATES: usize = 1 << 20;

/// Graph of all expansion remainders of a rational `x`.
///
/// States are the values `y` in `[0, r/(s-1)]` reachable from `x` by
/// `y -> s y - a` with `a` admissible; every state has at least one outgoing
/// edge. Infinite paths from the start state are exactly the
/// representations of `x`, read off the edge digits.
#[derive(Debug, Clone)]
pub struct RemainderAutomaton {
    params: Params,
    engine: Remainders,
    numerators: Vec<BigInt>,
    index: HashMap<BigInt, usize>,
    edges: Vec<Vec<(Digit, usize)>>,
}

impl RemainderAutomaton {
    pub fn build(x: &Rational, params: Params) -> Result<Self> {
        Self::build_with_limit(x, params, DEFAULT_MAX_STATES)
    }

    /// Breadth-first closure from `x`, digits in increasing order, so state
    /// numbering is deterministic. Fails once more than `max_states` appear.
    pub fn build_with_limit(x: &Rational, params: Params, max_states: usize) -> Result<Self> {
        let (engine, start) = Remainders::for_value(x, params)?;
        let mut automaton = RemainderAutomaton {
            params,
            engine,
            numerators: vec![start.clone()],
            index: HashMap::from([(start, 0)]),
            edges: Vec::new(),
        };
        let mut queue = VecDeque::from([0usize]);
        while let Some(state) = queue.pop_front() {
            let numer = automaton.numerators[state].clone();
            let mut out = Vec::new();
            for digit in automaton.engine.admissible(&numer) {
                let next = automaton.engine.step(&numer, digit);
                let target = match automaton.index.get(&next) {
                    Some(&t) => t,
                    None => {
                        let t = automaton.numerators.len();
                        if t >= max_states {
                            return Err(Error::Budget(format!(
                                "remainder automaton exceeds {max_states} states"
                            )));
                        }
                        automaton.numerators.push(next.clone());
                        automaton.index.insert(next, t);
                        queue.push_back(t);
                        t
                    }
                };
                out.push((digit, target));
            }
            debug_assert_eq!(state, automaton.edges.len());
            automaton.edges.push(out);
        }
        Ok(automaton)
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn start(&self) -> usize {
        0
    }

    pub fn len(&self) -> usize {
        self.numerators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numerators.is_empty()
    }

    pub fn state(&self, id: usize) -> Rational {
        self.engine.to_rational(&self.numerators[id])
    }

    pub fn states(&self) -> Vec<Rational> {
        (0..self.len()).map(|id| self.state(id)).collect()
    }

    /// Outgoing `(digit, target)` pairs of a state, digits increasing.
    pub fn edges(&self, id: usize) -> &[(Digit, usize)] {
        &self.edges[id]
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    pub fn find(&self, y: &Rational) -> Option<usize> {
        let scaled = y * Rational::from_integer(self.engine.denom().clone());
        if !scaled.is_integer() {
            return None;
        }
        self.index.get(&floor(&scaled)).copied()
    }

    /// A priori bound on the state count: states are multiples of `1/q` in
    /// `[0, r/(s-1)]`, so there are at most `floor(q r/(s-1)) + 1`.
    pub fn state_bound(&self) -> BigUint {
        let q = self.engine.denom();
        let bound: BigInt = q * self.params.r_big() / BigInt::from(self.params.s() - 1) + 1;
        bound.to_biguint().expect("positive")
    }

    /// Shortest digit word leading from the start to `target`; among words of
    /// that length the lexicographically least.
    pub fn shortest_word_to(&self, target: &Rational) -> Option<Vec<Digit>> {
        let goal = self.find(target)?;
        let mut parent: Vec<Option<(usize, Digit)>> = vec![None; self.len()];
        let mut seen = vec![false; self.len()];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            if u == goal {
                break;
            }
            for &(d, v) in &self.edges[u] {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = Some((u, d));
                    queue.push_back(v);
                }
            }
        }
        if !seen[goal] {
            return None;
        }
        let mut word = Vec::new();
        let mut cur = goal;
        while let Some((u, d)) = parent[cur] {
            word.push(d);
            cur = u;
        }
        word.reverse();
        Some(word)
    }

    /// Number of digit words of length `n` that extend to a representation,
    /// i.e. words `w` with `0 <= x - value(w) <= r/(s^n (s-1))`.
    pub fn count_prefixes(&self, n: usize) -> BigUint {
        let mut counts = vec![BigUint::zero(); self.len()];
        counts[0] = BigUint::from(1u32);
        for _ in 0..n {
            let mut next = vec![BigUint::zero(); self.len()];
            for (u, c) in counts.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for &(_, v) in &self.edges[u] {
                    next[v] += c;
                }
            }
            counts = next;
        }
        counts.into_iter().sum()
    }

    pub fn to_json(&self) -> Value {
        let states: Vec<String> = self.states().iter().map(format_rational).collect();
        let edges: Vec<Value> = self
            .edges
            .iter()
            .enumerate()
            .flat_map(|(u, out)| {
                let states = &states;
                out.iter().map(move |&(d, v)| {
                    json!({ "from": states[u], "digit": d, "to": states[v] })
                })
            })
            .collect();
        json!({
            "s": self.params.s(),
            "r": self.params.r(),
            "start": states[0],
            "states": states,
            "edges": edges,
        })
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph remainders {\n  rankdir=LR;\n");
        for id in 0..self.len() {
            let shape = if id == 0 { "doublecircle" } else { "circle" };
            out.push_str(&format!(
                "  n{id} [label=\"{}\", shape={shape}];\n",
                format_rational(&self.state(id))
            ));
        }
        for (u, targets) in self.edges.iter().enumerate() {
            for &(d, v) in targets {
                out.push_str(&format!("  n{u} -> n{v} [label=\"{d}\"];\n"));
            }
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn p(s: u32, r: u32) -> Params {
        Params::new(s, r).unwrap()
    }

    #[test]
    fn zero_and_top_are_single_loops() {
        let a = RemainderAutomaton::build(&int(0), p(2, 3)).unwrap();
        assert_eq!(a.len(), 1);
        assert_eq!(a.edges(0), &[(0, 0)]);
        let a = RemainderAutomaton::build(&int(3), p(2, 3)).unwrap();
        assert_eq!(a.len(), 1);
        assert_eq!(a.edges(0), &[(3, 0)]);
    }

    #[test]
    fn closure_of_one() {
        let params = p(2, 3);
        let a = RemainderAutomaton::build(&int(1), params).unwrap();
        assert_eq!(a.states(), vec![int(1), int(2), int(0), int(3)]);
        for id in 0..a.len() {
            let y = a.state(id);
            assert!(y >= int(0) && y <= params.x_max());
            let digits: Vec<Digit> = a.edges(id).iter().map(|e| e.0).collect();
            let expect: Vec<Digit> = crate::numerals::admissible_digits(&y, params)
                .unwrap()
                .collect();
            assert_eq!(digits, expect);
            for &(d, t) in a.edges(id) {
                assert_eq!(a.state(t), &y * int(2) - int(d as i64));
            }
        }
        assert!(BigUint::from(a.len()) <= a.state_bound());
    }

    #[test]
    fn prefix_count_examples() {
        let a = RemainderAutomaton::build(&int(1), p(2, 3)).unwrap();
        assert_eq!(a.count_prefixes(0), BigUint::from(1u32));
        assert_eq!(a.count_prefixes(1), BigUint::from(3u32));
        for n in 0..10 {
            let zero = RemainderAutomaton::build(&int(0), p(3, 5)).unwrap();
            assert_eq!(zero.count_prefixes(n), BigUint::from(1u32));
            let top = RemainderAutomaton::build(&ratio(5, 2), p(3, 5)).unwrap();
            assert_eq!(top.count_prefixes(n), BigUint::from(1u32));
        }
    }

    #[test]
    fn state_budget_is_enforced() {
        let err = RemainderAutomaton::build_with_limit(&ratio(1, 997), p(2, 3), 10).unwrap_err();
        assert!(matches!(err, Error::Budget(_)));
    }

    #[test]
    fn exports() {
        let a = RemainderAutomaton::build(&ratio(1, 2), p(2, 3)).unwrap();
        let dot = a.to_dot();
        assert!(dot.starts_with("digraph"));
        assert!(dot.contains("label=\"1/2\""));
        let j = a.to_json();
        assert_eq!(j["start"], "1/2");
        assert_eq!(j["edges"].as_array().unwrap().len(), a.edge_count());
    }
}
