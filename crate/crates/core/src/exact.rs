//! Exact isolation numbers.
//!
//! The main solver strips leaves, splits into components and runs an
//! iterative-deepening hitting-set search: every isolating set meets
//! `N[V(W)]` for any surviving cycle `W`, so branching over that closed
//! neighbourhood is complete. [`isolation_number_naive`] enumerates subsets
//! in size order and exists to cross-check the search.

use itertools::Itertools;
use serde::Serialize;

use crate::detect::{find_family_witness, is_isolating, CycleFamily};
use crate::error::{Error, Result};
use crate::graph::{strip_leaves, Graph, VertexSet};

/// Largest graph the branching search accepts without a budget.
pub const EXACT_LIMIT: usize = 24;
/// Largest graph the subset-enumeration oracle accepts.
pub const NAIVE_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsolationResult {
    pub size: usize,
    pub witness: VertexSet,
    /// True when `size` is proven minimum.
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Search {
    Found(IsolationResult),
    /// The isolation number is larger than the budget.
    ExceedsBudget { budget: usize },
}

impl Search {
    pub fn found(self) -> Option<IsolationResult> {
        match self {
            Search::Found(r) => Some(r),
            Search::ExceedsBudget { .. } => None,
        }
    }
}

/// Minimum isolating set. With a budget, the search never looks at sets
/// larger than `budget` and reports [`Search::ExceedsBudget`] instead.
pub fn isolation_number(g: &Graph, family: CycleFamily, budget: Option<usize>) -> Result<Search> {
    if budget.is_none() && g.n() > EXACT_LIMIT {
        return Err(Error::TooLarge {
            what: "exact search without a budget",
            n: g.n(),
            limit: EXACT_LIMIT,
        });
    }
    let (core, _) = strip_leaves(g);
    let mut witness = VertexSet::new();
    for comp in core.graph.components() {
        let remaining = budget.map(|b| b - witness.len());
        let cap = remaining.unwrap_or(comp.graph.n());
        match solve_component(&comp.graph, family, cap) {
            Some(d) => witness.extend(core.lift(&comp.lift(&d)).iter()),
            None => {
                return Ok(Search::ExceedsBudget {
                    budget: budget.unwrap_or(cap),
                })
            }
        }
    }
    debug_assert!(is_isolating(g, family, &witness)?);
    Ok(Search::Found(IsolationResult {
        size: witness.len(),
        witness,
        exact: true,
    }))
}

/// [`isolation_number`] without a budget.
pub fn exact_isolation_number(g: &Graph, family: CycleFamily) -> Result<IsolationResult> {
    Ok(isolation_number(g, family, None)?
        .found()
        .expect("unbounded search always finds a set"))
}

fn solve_component(g: &Graph, family: CycleFamily, cap: usize) -> Option<VertexSet> {
    let mut chosen = Vec::new();
    (0..=cap).find_map(|k| branch(g, family, k, &mut chosen).then(|| chosen.iter().copied().collect()))
}

fn branch(g: &Graph, family: CycleFamily, k: usize, chosen: &mut Vec<usize>) -> bool {
    let covered = g.closed_neighborhood_mask(chosen.iter().copied());
    let rest = g.induced_by_mask(|v| !covered[v]);
    let Some(cycle) = find_family_witness(&rest.graph, family) else {
        return true;
    };
    if k == 0 {
        return false;
    }
    let hit = g.closed_neighborhood_mask(cycle.vertices().iter().map(|&v| rest.origin[v]));
    for c in g.vertices().filter(|&c| hit[c]) {
        chosen.push(c);
        if branch(g, family, k - 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Smallest isolating set by enumerating all `k`-subsets for increasing `k`.
pub fn isolation_number_naive(g: &Graph, family: CycleFamily) -> Result<IsolationResult> {
    if g.n() > NAIVE_LIMIT {
        return Err(Error::TooLarge {
            what: "naive subset enumeration",
            n: g.n(),
            limit: NAIVE_LIMIT,
        });
    }
    for k in 0..=g.n() {
        for subset in g.vertices().combinations(k) {
            let d: VertexSet = subset.into();
            if is_isolating(g, family, &d)? {
                return Ok(IsolationResult {
                    size: k,
                    witness: d,
                    exact: true,
                });
            }
        }
    }
    unreachable!("the full vertex set isolates every family")
}

#[cfg(test)]
mod tests {
    use super::*;

    const CP: CycleFamily = CycleFamily::NonTriangleCycles;

    fn iota(g: &Graph, family: CycleFamily) -> usize {
        let r = exact_isolation_number(g, family).unwrap();
        assert!(is_isolating(g, family, &r.witness).unwrap());
        assert_eq!(r.size, r.witness.len());
        r.size
    }

    /// Two C4-plus-pendant units whose connection vertices are joined.
    fn pure_special_q2() -> Graph {
        Graph::from_edges(
            10,
            [
                (0, 1),
                (0, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 2),
                (1, 6),
                (6, 7),
                (7, 8),
                (8, 9),
                (9, 6),
            ],
        )
        .unwrap()
    }

    #[test]
    fn solver_examples() {
        assert_eq!(iota(&Graph::cycle(4), CP), 1);
        assert_eq!(iota(&Graph::diamond(), CP), 1);
        assert_eq!(iota(&Graph::cycle(3), CP), 0);
        assert_eq!(iota(&Graph::cycle(4).disjoint_union(&Graph::cycle(5)), CP), 2);
        let special = pure_special_q2();
        assert_eq!(special.m(), 11);
        assert_eq!(iota(&special, CP), 2);
    }

    #[test]
    fn petersen_value_from_subset_enumeration() {
        // Frozen from isolation_number_naive: N[v] leaves an induced 6-cycle,
        // and two vertices at distance two cover seven vertices.
        let naive = isolation_number_naive(&Graph::petersen(), CP).unwrap();
        assert_eq!(naive.size, 2);
        assert_eq!(iota(&Graph::petersen(), CP), 2);
    }

    #[test]
    fn naive_examples() {
        assert_eq!(isolation_number_naive(&Graph::path(5), CycleFamily::AllCycles).unwrap().size, 0);
        assert_eq!(isolation_number_naive(&Graph::cycle(6), CycleFamily::AllCycles).unwrap().size, 1);
        assert_eq!(isolation_number_naive(&Graph::cycle(4), CycleFamily::FixedCycle(4)).unwrap().size, 1);
        assert!(matches!(
            isolation_number_naive(&Graph::path(13), CP),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn budget_and_size_limits() {
        let two = Graph::cycle(5).disjoint_union(&Graph::cycle(5));
        assert_eq!(isolation_number(&two, CP, Some(1)).unwrap(), Search::ExceedsBudget { budget: 1 });
        assert_eq!(isolation_number(&two, CP, Some(2)).unwrap().found().unwrap().size, 2);
        assert!(isolation_number(&Graph::cycle(30), CP, None).is_err());
        assert_eq!(isolation_number(&Graph::cycle(30), CP, Some(1)).unwrap().found().unwrap().size, 1);
        assert_eq!(iota(&Graph::empty(0), CP), 0);
    }
}
