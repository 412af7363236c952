//! Checks the constructive algorithm's contract graph by graph.

use rand::Rng;
use serde::Serialize;

use crate::constructive::construct_isolating_set;
use crate::detect::{is_isolating, CycleFamily};
use crate::error::{Error, Result};
use crate::exact::{exact_isolation_number, EXACT_LIMIT};
use crate::graph::{Graph, VertexSet};
use crate::harness::io::encode_graph6;
use crate::special::{random_tree, EqualityClass};

#[derive(Clone, Debug, Serialize)]
pub struct ConstructiveRecord {
    pub id: String,
    pub n: usize,
    pub m: usize,
    pub set: VertexSet,
    pub class: EqualityClass,
    /// `D` isolates every non-triangle cycle.
    pub isolating: bool,
    /// `6|D| <= m + 1`.
    pub within_bound: bool,
    /// `6|D| <= m` whenever the graph is not extremal.
    pub strict_when_not_extremal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<usize>,
    pub cases: Vec<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ConstructiveRecord {
    pub fn passed(&self) -> bool {
        self.error.is_none()
            && self.isolating
            && self.within_bound
            && self.strict_when_not_extremal
            && self.exact.is_none_or(|e| e <= self.set.len())
    }
}

/// Runs the construction on a connected graph other than the 4-cycle and
/// checks its contract. With `compare_exact`, also records the exact value
/// (graphs up to the exact solver's limit) so callers can check `|D| >= ι`.
/// Internal failures of the construction are reported in the record rather
/// than returned.
pub fn verify_constructive(g: &Graph, compare_exact: bool) -> Result<ConstructiveRecord> {
    let id = encode_graph6(g).unwrap_or_else(|_| format!("n={} m={}", g.n(), g.m()));
    let class = EqualityClass::of(g);
    let exact = if compare_exact && g.n() <= EXACT_LIMIT {
        Some(exact_isolation_number(g, CycleFamily::NonTriangleCycles)?.size)
    } else {
        None
    };
    let mut record = ConstructiveRecord {
        id,
        n: g.n(),
        m: g.m(),
        set: VertexSet::new(),
        class,
        isolating: false,
        within_bound: false,
        strict_when_not_extremal: false,
        exact,
        cases: Vec::new(),
        error: None,
    };
    match construct_isolating_set(g) {
        Ok((d, trace)) => {
            record.isolating = is_isolating(g, CycleFamily::NonTriangleCycles, &d)?;
            record.within_bound = 6 * d.len() <= g.m() + 1;
            record.strict_when_not_extremal = class.is_cprime_extremal() || 6 * d.len() <= g.m();
            record.cases = trace.root.cases();
            record.set = d;
        }
        Err(e @ Error::Input(_)) => return Err(e),
        Err(e) => record.error = Some(e.to_string()),
    }
    Ok(record)
}

/// Random connected graph on `n` vertices: a uniform labelled spanning tree
/// plus each remaining pair independently with probability `p`.
pub fn random_connected_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = random_tree(n, rng);
    for v in 1..n {
        for u in 0..v {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("valid endpoints")
}

/// Sparse connected graph grown block by block: each step glues a small
/// piece (edge, triangle, 4-cycle, diamond, 5-cycle, K4, or a 4-cycle with a
/// pendant, or two of those joined at the pendants) at an existing vertex or hangs it by a new edge, with an
/// occasional extra chord. These graphs sit close to the edge bounds.
pub fn random_block_graph<R: Rng>(max_n: usize, rng: &mut R) -> Graph {
    const PIECES: [&[(usize, usize)]; 8] = [
        &[(0, 1)],
        &[(0, 1), (1, 2), (2, 0)],
        &[(0, 1), (1, 2), (2, 3), (3, 0)],
        &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)],
        &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)],
        &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 1)],
        &[(0, 1), (0, 2), (2, 3), (3, 4), (4, 5), (5, 2), (1, 6), (6, 7), (7, 8), (8, 9), (9, 6)],
    ];
    let max_n = max_n.max(1);
    let mut n = 1;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut misses = 0;
    while misses < 8 {
        let piece = PIECES[rng.gen_range(0..PIECES.len())];
        let size = piece.iter().map(|&(a, b)| a.max(b)).max().unwrap() + 1;
        let bridge = rng.gen_bool(0.4);
        let fresh = if bridge { size } else { size - 1 };
        if n + fresh > max_n {
            misses += 1;
            continue;
        }
        let at = rng.gen_range(0..n);
        // Local vertex 0 is `at` when glued, or a fresh vertex joined to `at`.
        let map = |x: usize| if x == 0 && !bridge { at } else { n + x - usize::from(!bridge) };
        if bridge {
            edges.push((at, n));
        }
        edges.extend(piece.iter().map(|&(a, b)| (map(a), map(b))));
        n += fresh;
        if rng.gen_bool(0.08) {
            let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if u != v {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("valid endpoints")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn five_cycle_is_extremal_and_passes() {
        let r = verify_constructive(&Graph::cycle(5), true).unwrap();
        assert!(r.passed());
        assert_eq!(r.set.len(), 1);
        assert_eq!(r.exact, Some(1));
    }

    #[test]
    fn four_cycle_is_refused() {
        assert!(verify_constructive(&Graph::cycle(4), false).is_err());
    }

    #[test]
    fn random_graphs_are_connected() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..20 {
            let g = random_connected_graph(n, 0.1, &mut rng);
            assert_eq!(g.n(), n);
            assert!(g.is_connected());
            let h = random_block_graph(n, &mut rng);
            assert!(h.n() <= n);
            assert!(h.is_connected());
        }
    }
}
