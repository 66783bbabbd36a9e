use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::RemainderAutomaton;
use crate::error::Result;
use crate::numerals::Params;
use crate::rational::Rational;

/// How many representations a number has.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Cardinality {
    Finite(BigUint),
    CountablyInfinite,
    Continuum,
}

impl Cardinality {
    pub fn finite(n: u64) -> Self {
        Cardinality::Finite(BigUint::from(n))
    }

    pub fn is_unique(&self) -> bool {
        matches!(self, Cardinality::Finite(n) if n.is_one())
    }
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinality::Finite(n) => write!(f, "finite({n})"),
            Cardinality::CountablyInfinite => f.write_str("countably_infinite"),
            Cardinality::Continuum => f.write_str("continuum"),
        }
    }
}

/// Strongly connected components in reverse topological order (every edge
/// leaving a component points to one listed earlier).
///
/// Iterative Tarjan, so deep automata do not overflow the stack.
pub fn strongly_connected_components(successors: &[Vec<usize>]) -> Vec<Vec<usize>> {
    const UNSEEN: usize = usize::MAX;
    let n = successors.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut components = Vec::new();
    let mut counter = 0;
    // (vertex, next successor position)
    let mut work: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        work.push((root, 0));
        while let Some(&mut (v, ref mut pos)) = work.last_mut() {
            if *pos == 0 && index[v] == UNSEEN {
                index[v] = counter;
                low[v] = counter;
                counter += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if let Some(&w) = successors[v].get(*pos) {
                *pos += 1;
                if index[w] == UNSEEN {
                    work.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            work.pop();
            if let Some(&(parent, _)) = work.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut component = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    component.push(w);
                    if w == v {
                        break;
                    }
                }
                components.push(component);
            }
        }
    }
    components
}

/// Structural summary of an automaton's components.
#[derive(Debug, Clone)]
pub(crate) struct ComponentMap {
    /// Components, reverse topological order.
    pub members: Vec<Vec<usize>>,
    /// Whether a component carries a cycle (more than one state or a loop).
    pub cyclic: Vec<bool>,
    /// Number of edges with both ends inside the component.
    pub internal_edges: Vec<usize>,
    /// Whether some edge leaves the component.
    pub has_exit: Vec<bool>,
}

impl ComponentMap {
    pub fn new(automaton: &RemainderAutomaton) -> Self {
        let successors: Vec<Vec<usize>> = (0..automaton.len())
            .map(|u| automaton.edges(u).iter().map(|e| e.1).collect())
            .collect();
        let members = strongly_connected_components(&successors);
        let mut of = vec![0; automaton.len()];
        for (c, list) in members.iter().enumerate() {
            for &v in list {
                of[v] = c;
            }
        }
        let k = members.len();
        let mut internal_edges = vec![0; k];
        let mut has_exit = vec![false; k];
        for (u, targets) in successors.iter().enumerate() {
            for &v in targets {
                if of[u] == of[v] {
                    internal_edges[of[u]] += 1;
                } else {
                    has_exit[of[u]] = true;
                }
            }
        }
        let cyclic = (0..k)
            .map(|c| members[c].len() > 1 || internal_edges[c] > 0)
            .collect();
        ComponentMap {
            members,
            cyclic,
            internal_edges,
            has_exit,
        }
    }

    /// A strongly connected component with more internal edges than states
    /// holds two distinct cycles.
    pub fn is_branching(&self, c: usize) -> bool {
        self.cyclic[c] && self.internal_edges[c] > self.members[c].len()
    }
}

/// Cardinality of the infinite-path set of the automaton from its start.
///
/// - a component holding two distinct cycles gives a continuum of paths;
/// - otherwise every component is a simple cycle or a single acyclic
///   state, and an edge leaving some cycle gives countably many paths
///   (loop `k` times, then leave);
/// - otherwise all cycles are sinks and the paths are counted through the
///   acyclic part.
pub fn classify_automaton(automaton: &RemainderAutomaton) -> Cardinality {
    let comps = ComponentMap::new(automaton);
    let k = comps.members.len();
    if (0..k).any(|c| comps.is_branching(c)) {
        return Cardinality::Continuum;
    }
    if (0..k).any(|c| comps.cyclic[c] && comps.has_exit[c]) {
        return Cardinality::CountablyInfinite;
    }
    // reverse topological order: targets are finished before sources
    let mut paths = vec![BigUint::zero(); automaton.len()];
    for c in 0..k {
        for &v in &comps.members[c] {
            paths[v] = if comps.cyclic[c] {
                BigUint::one()
            } else {
                automaton
                    .edges(v)
                    .iter()
                    .map(|&(_, t)| paths[t].clone())
                    .sum()
            };
        }
    }
    Cardinality::Finite(paths[automaton.start()].clone())
}

/// Whether `x` has finitely many, countably many, or a continuum of
/// representations.
pub fn classify(x: &Rational, params: Params) -> Result<Cardinality> {
    let automaton = RemainderAutomaton::build(x, params)?;
    Ok(classify_automaton(&automaton))
}
