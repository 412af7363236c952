//! Special graphs: `q` pendant copies of a base cycle hung from the vertices
//! of a tree, plus a connected remainder glued at the last tree vertex.
//!
//! With `k` base edges, an `m`-edge special graph has `m + 1 = q(k + 2) + r`
//! with `0 <= r <= k + 1`; it is *pure* when the remainder has no edges.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Base cycle of the constituents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Base {
    C3,
    C4,
}

impl Base {
    /// Vertex count, which equals the edge count for a cycle.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(self) -> usize {
        match self {
            Base::C3 => 3,
            Base::C4 => 4,
        }
    }

    pub fn graph(self) -> Graph {
        Graph::cycle(self.len())
    }

    /// `(q, r)` with `m + 1 = q(k + 2) + r` and `0 <= r <= k + 1`.
    pub fn split(self, m: usize) -> (usize, usize) {
        let unit = self.len() + 2;
        ((m + 1) / unit, (m + 1) % unit)
    }
}

impl FromStr for Base {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "c3" => Ok(Base::C3),
            "c4" => Ok(Base::C4),
            _ => Err(Error::Input(format!("unknown base `{s}` (expected c3 or c4)"))),
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Base::C3 => "c3",
            Base::C4 => "c4",
        })
    }
}

/// Parameters of one special graph.
///
/// Tree vertices are `0..q`. Remainder edges use local ids where `0` is the
/// last tree vertex and `1..` are fresh vertices. `attach[i]` picks the
/// base-cycle position that constituent `i` hangs from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialSpec {
    pub base: Base,
    pub m: usize,
    pub q: usize,
    pub r: usize,
    pub tree_edges: Vec<(usize, usize)>,
    pub remainder_edges: Vec<(usize, usize)>,
    pub attach: Vec<usize>,
}

impl SpecialSpec {
    pub fn new(
        base: Base,
        m: usize,
        tree_edges: Vec<(usize, usize)>,
        remainder_edges: Vec<(usize, usize)>,
        attach: Vec<usize>,
    ) -> Result<Self> {
        let (q, r) = base.split(m);
        let spec = Self {
            base,
            m,
            q,
            r,
            tree_edges,
            remainder_edges,
            attach,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Pure special graph with a path as tree and every constituent attached
    /// at its first cycle vertex.
    pub fn pure(base: Base, m: usize) -> Result<Self> {
        let (q, _) = base.split(m);
        Self::new(base, m, (1..q).map(|i| (i - 1, i)).collect(), Vec::new(), vec![0; q])
    }

    pub fn is_pure(&self) -> bool {
        self.remainder_edges.is_empty()
    }

    fn validate(&self) -> Result<()> {
        let bad = |clause: &str| Error::Input(format!("invalid special spec: {clause}"));
        let unit = self.base.len() + 2;
        if self.m + 1 != self.q * unit + self.r || self.r > unit - 1 {
            return Err(bad("m + 1 = q(k + 2) + r with 0 <= r <= k + 1"));
        }
        if self.q == 0 {
            return Err(bad("q >= 1"));
        }
        if self.attach.len() != self.q || self.attach.iter().any(|&a| a >= self.base.len()) {
            return Err(bad("one attachment vertex per constituent"));
        }
        let tree = Graph::from_edges(self.q, self.tree_edges.iter().copied())
            .map_err(|_| bad("tree edges on vertices 0..q"))?;
        if tree.m() != self.q - 1 || self.tree_edges.len() != self.q - 1 || !tree.is_connected() {
            return Err(bad("tree edges form a tree on q vertices"));
        }
        if self.remainder_edges.len() != self.r {
            return Err(bad("remainder has exactly r edges"));
        }
        if self.r > 0 {
            let size = self.remainder_edges.iter().map(|&(a, b)| a.max(b)).max().unwrap() + 1;
            let rem = Graph::from_edges(size, self.remainder_edges.iter().copied())
                .map_err(|_| bad("remainder is a simple graph"))?;
            if rem.m() != self.r || !rem.is_connected() {
                return Err(bad("remainder is connected with exactly r edges"));
            }
        }
        Ok(())
    }

    fn remainder_size(&self) -> usize {
        self.remainder_edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(1)
    }

    fn cycle_vertex(&self, constituent: usize, pos: usize) -> usize {
        self.q + constituent * self.base.len() + pos
    }

    fn remainder_vertex(&self, local: usize) -> usize {
        match local {
            0 => self.q - 1,
            t => self.q + self.q * self.base.len() + t - 1,
        }
    }

    /// The decomposition of [`build_special`]'s output, for pure specs.
    pub fn decomposition(&self) -> SpecialDecomposition {
        let len = self.base.len();
        let constituents = (0..self.q)
            .map(|i| {
                let a = self.attach[i];
                Constituent {
                    connection: i,
                    cycle: (0..len).map(|t| self.cycle_vertex(i, (a + t) % len)).collect(),
                }
            })
            .collect();
        SpecialDecomposition {
            base: self.base,
            q: self.q,
            constituents,
            tree_edges: self.tree_edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect(),
            remainder: (0..self.remainder_size()).map(|t| self.remainder_vertex(t)).collect(),
        }
    }
}

/// Assembles the graph described by `spec`.
pub fn build_special(spec: &SpecialSpec) -> Result<Graph> {
    spec.validate()?;
    let len = spec.base.len();
    let n = spec.q * (len + 1) + spec.remainder_size() - 1;
    let mut edges = Vec::with_capacity(spec.m);
    for i in 0..spec.q {
        edges.push((i, spec.cycle_vertex(i, spec.attach[i])));
        for t in 0..len {
            edges.push((spec.cycle_vertex(i, t), spec.cycle_vertex(i, (t + 1) % len)));
        }
    }
    edges.extend(spec.tree_edges.iter().copied());
    edges.extend(
        spec.remainder_edges
            .iter()
            .map(|&(a, b)| (spec.remainder_vertex(a), spec.remainder_vertex(b))),
    );
    let g = Graph::from_edges(n, edges)?;
    debug_assert_eq!(g.m(), spec.m);
    Ok(g)
}

/// Seeded random special graph: uniform tree via Prüfer decoding, random
/// attachment positions, and a connected remainder drawn by rejection.
pub fn random_special(base: Base, m: usize, pure: bool, seed: u64) -> Result<(SpecialSpec, Graph)> {
    let (q, r) = base.split(m);
    if q == 0 {
        return Err(Error::Input(format!("m = {m} gives q = 0 for base {base}")));
    }
    if pure && r != 0 {
        return Err(Error::Input(format!(
            "m = {m} leaves remainder r = {r}; pure {base}-special graphs need m + 1 divisible by {}",
            base.len() + 2
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tree_edges = random_tree(q, &mut rng);
    let attach = (0..q).map(|_| rng.gen_range(0..base.len())).collect();
    let remainder_edges = random_connected(r, &mut rng);
    let spec = SpecialSpec::new(base, m, tree_edges, remainder_edges, attach)?;
    let g = build_special(&spec)?;
    Ok((spec, g))
}

/// Uniform labelled tree on `n` vertices.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Vec<(usize, usize)> {
    match n {
        0 | 1 => Vec::new(),
        2 => vec![(0, 1)],
        _ => {
            let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
            decode_pruefer(&code)
        }
    }
}

/// Tree on `code.len() + 2` vertices encoded by a Prüfer sequence.
pub fn decode_pruefer(code: &[usize]) -> Vec<(usize, usize)> {
    let n = code.len() + 2;
    let mut degree = vec![1usize; n];
    for &c in code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &c in code {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf.min(c), leaf.max(c)));
        degree[leaf] = 0;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Connected graph with exactly `r` edges on at most `r + 1` vertices
/// including vertex 0.
fn random_connected<R: Rng>(r: usize, rng: &mut R) -> Vec<(usize, usize)> {
    if r == 0 {
        return Vec::new();
    }
    let sizes: Vec<usize> = (2..=r + 1).filter(|&s| s * (s - 1) / 2 >= r).collect();
    loop {
        let size = *sizes.choose(rng).unwrap();
        let pairs: Vec<(usize, usize)> = (0..size).flat_map(|a| (a + 1..size).map(move |b| (a, b))).collect();
        let edges: Vec<(usize, usize)> = pairs.choose_multiple(rng, r).copied().collect();
        let g = Graph::from_edges(size, edges.iter().copied()).unwrap();
        if g.is_connected() {
            return edges;
        }
    }
}

/// A pendant base cycle and the tree vertex it hangs from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Constituent {
    pub connection: usize,
    /// Cycle vertices in cyclic order, starting at the attachment vertex.
    pub cycle: Vec<usize>,
}

impl Constituent {
    pub fn attachment(&self) -> usize {
        self.cycle[0]
    }

    /// Connection plus cycle vertices.
    pub fn vertices(&self) -> VertexSet {
        self.cycle.iter().copied().chain([self.connection]).collect()
    }

    pub fn contains(&self, v: usize) -> bool {
        v == self.connection || self.cycle.contains(&v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialDecomposition {
    pub base: Base,
    pub q: usize,
    /// Ordered by connection id.
    pub constituents: Vec<Constituent>,
    pub tree_edges: Vec<(usize, usize)>,
    pub remainder: VertexSet,
}

impl SpecialDecomposition {
    pub fn connections(&self) -> VertexSet {
        self.constituents.iter().map(|c| c.connection).collect()
    }

    pub fn constituent_of(&self, v: usize) -> Option<usize> {
        self.constituents.iter().position(|c| c.contains(v))
    }
}

/// Decides whether connected `g` is a pure special graph over `base` with
/// `q >= 1`, and recovers its decomposition.
///
/// Every non-bridge block must be a base cycle in which exactly one vertex
/// has outside neighbours, and exactly one of them; those outside
/// neighbours are the connections, which must be distinct, cover every
/// vertex outside the cycles, and span a tree.
pub fn recognize_pure_special(g: &Graph, base: Base) -> Option<SpecialDecomposition> {
    if !g.is_connected() {
        return None;
    }
    let len = base.len();
    let mut in_cycle = vec![false; g.n()];
    let mut constituents = Vec::new();
    for block in g.blocks().blocks.iter().filter(|b| !b.is_bridge()) {
        if block.vertices.len() != len || block.edges.len() != len {
            return None;
        }
        let mut hook = None;
        for w in block.vertices.iter() {
            let outside: Vec<usize> = g.neighbors(w).iter().copied().filter(|&x| !block.vertices.contains(x)).collect();
            match (outside.as_slice(), hook) {
                ([], _) => {}
                ([x], None) => hook = Some((w, *x)),
                _ => return None,
            }
            in_cycle[w] = true;
        }
        let (w, connection) = hook?;
        constituents.push(Constituent {
            connection,
            cycle: cyclic_order(g, &block.vertices, w),
        });
    }
    let q = constituents.len();
    if q == 0 {
        return None;
    }
    constituents.sort_by_key(|c| c.connection);
    let connections: VertexSet = constituents.iter().map(|c| c.connection).collect();
    if connections.len() != q || connections.iter().any(|v| in_cycle[v]) {
        return None;
    }
    let outside_cycles: VertexSet = g.vertices().filter(|&v| !in_cycle[v]).collect();
    if outside_cycles != connections || g.m() + 1 != q * (len + 2) {
        return None;
    }
    let tree_edges: Vec<(usize, usize)> = g
        .edges()
        .filter(|&(a, b)| connections.contains(a) && connections.contains(b))
        .collect();
    if tree_edges.len() != q - 1 {
        return None;
    }
    let remainder = VertexSet::singleton(connections.last().unwrap());
    Some(SpecialDecomposition {
        base,
        q,
        constituents,
        tree_edges,
        remainder,
    })
}

fn cyclic_order(g: &Graph, cycle: &VertexSet, start: usize) -> Vec<usize> {
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while order.len() < cycle.len() {
        let next = g
            .neighbors(cur)
            .iter()
            .copied()
            .find(|&x| x != prev && x != start && cycle.contains(x) && !order.contains(&x))
            .unwrap();
        order.push(next);
        prev = cur;
        cur = next;
    }
    order
}

/// True iff `g` is a diamond or a 5-cycle.
pub fn is_diamond_or_c5(g: &Graph) -> bool {
    match g.n() {
        4 => g.is_isomorphic_small(&Graph::diamond()).unwrap(),
        5 => g.is_isomorphic_small(&Graph::cycle(5)).unwrap(),
        _ => false,
    }
}

/// An isolating set of size `q` containing the prescribed vertex `v`: `v`
/// together with the connections of every other constituent (or all
/// connections when `v` is itself a connection).
pub fn prop1_isolating_set(dec: &SpecialDecomposition, g: &Graph, v: usize) -> Result<VertexSet> {
    g.check_vertex(v)?;
    let j = dec
        .constituent_of(v)
        .ok_or_else(|| Error::Precondition(format!("vertex {v} lies in no constituent")))?;
    let mut d: VertexSet = dec
        .constituents
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != j)
        .map(|(_, c)| c.connection)
        .collect();
    d.insert(v);
    Ok(d)
}

/// Structural class relevant to the equality cases of the edge bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EqualityClass {
    PureSpecialC3,
    PureSpecialC4,
    Diamond,
    C5,
    C4,
    None,
}

impl EqualityClass {
    pub fn of(g: &Graph) -> Self {
        if g.n() == 4 && g.is_isomorphic_small(&Graph::cycle(4)).unwrap() {
            EqualityClass::C4
        } else if g.n() == 4 && g.is_isomorphic_small(&Graph::diamond()).unwrap() {
            EqualityClass::Diamond
        } else if g.n() == 5 && g.is_isomorphic_small(&Graph::cycle(5)).unwrap() {
            EqualityClass::C5
        } else if recognize_pure_special(g, Base::C4).is_some() {
            EqualityClass::PureSpecialC4
        } else if recognize_pure_special(g, Base::C3).is_some() {
            EqualityClass::PureSpecialC3
        } else {
            EqualityClass::None
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            EqualityClass::PureSpecialC3 => "pure-special-c3",
            EqualityClass::PureSpecialC4 => "pure-special-c4",
            EqualityClass::Diamond => "diamond",
            EqualityClass::C5 => "c5",
            EqualityClass::C4 => "c4",
            EqualityClass::None => "none",
        }
    }

    /// Attains the non-triangle-cycle edge bound.
    pub fn is_cprime_extremal(self) -> bool {
        matches!(self, EqualityClass::PureSpecialC4 | EqualityClass::Diamond | EqualityClass::C5)
    }
}

/// Pure C4-special graph, diamond, or 5-cycle.
pub fn is_cprime_extremal(g: &Graph) -> bool {
    is_diamond_or_c5(g) || recognize_pure_special(g, Base::C4).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::{is_isolating, CycleFamily};

    const CP: CycleFamily = CycleFamily::NonTriangleCycles;

    fn c4_pendant() -> Graph {
        Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]).unwrap()
    }

    #[test]
    fn build_examples() {
        let g = build_special(&SpecialSpec::pure(Base::C4, 5).unwrap()).unwrap();
        assert_eq!((g.n(), g.m()), (5, 5));
        assert!(g.is_isomorphic_small(&c4_pendant()).unwrap());

        let spec = SpecialSpec::new(Base::C4, 11, vec![(0, 1)], vec![], vec![0, 0]).unwrap();
        let g = build_special(&spec).unwrap();
        assert_eq!((g.n(), g.m()), (10, 11));
        assert!(g.is_connected());

        let g = build_special(&SpecialSpec::pure(Base::C3, 4).unwrap()).unwrap();
        let triangle_pendant = Graph::from_edges(4, [(0, 1), (1, 2), (2, 0), (0, 3)]).unwrap();
        assert!(g.is_isomorphic_small(&triangle_pendant).unwrap());
    }

    #[test]
    fn spec_validation_names_the_clause() {
        let err = SpecialSpec::new(Base::C4, 11, vec![], vec![], vec![0, 0]).unwrap_err();
        assert!(err.to_string().contains("tree"));
        let err = SpecialSpec::new(Base::C4, 12, vec![(0, 1)], vec![], vec![0, 0]).unwrap_err();
        assert!(err.to_string().contains("exactly r edges"));
        assert!(SpecialSpec::new(Base::C4, 3, vec![], vec![], vec![]).is_err());
        assert!(SpecialSpec::new(Base::C4, 12, vec![(0, 1)], vec![(0, 1)], vec![0, 3]).is_ok());
        let err = SpecialSpec::new(Base::C4, 13, vec![(0, 1)], vec![(0, 1), (2, 3)], vec![0, 0]).unwrap_err();
        assert!(err.to_string().contains("connected"));
    }

    #[test]
    fn random_examples() {
        let (spec, g) = random_special(Base::C4, 17, true, 7).unwrap();
        assert_eq!(spec.q, 3);
        assert_eq!((g.n(), g.m()), (15, 17));
        assert_eq!(recognize_pure_special(&g, Base::C4).unwrap().q, 3);

        for seed in 0..10 {
            let (_, g) = random_special(Base::C4, 5, true, seed).unwrap();
            assert!(g.is_isomorphic_small(&c4_pendant()).unwrap());
        }

        let (spec, g) = random_special(Base::C4, 12, false, 3).unwrap();
        assert_eq!((spec.q, spec.r), (2, 1));
        assert!(recognize_pure_special(&g, Base::C4).is_none());

        assert!(random_special(Base::C4, 12, true, 0).is_err());
        assert!(random_special(Base::C4, 3, false, 0).is_err());
    }

    #[test]
    fn random_is_deterministic_per_seed() {
        assert_eq!(random_special(Base::C4, 29, false, 11).unwrap(), random_special(Base::C4, 29, false, 11).unwrap());
    }

    #[test]
    fn recognizer_examples() {
        let dec = recognize_pure_special(&c4_pendant(), Base::C4).unwrap();
        assert_eq!(dec.q, 1);
        assert_eq!(dec.constituents[0].connection, 4);
        assert_eq!(dec.constituents[0].attachment(), 0);
        assert!(recognize_pure_special(&Graph::diamond(), Base::C4).is_none());
        assert!(recognize_pure_special(&Graph::cycle(4), Base::C4).is_none());
        assert!(recognize_pure_special(&c4_pendant(), Base::C3).is_none());
    }

    #[test]
    fn recognizer_round_trips_random_pure_specs() {
        for base in [Base::C3, Base::C4] {
            for seed in 0..100u64 {
                let q = 1 + (seed as usize % 6);
                let m = q * (base.len() + 2) - 1;
                let (spec, g) = random_special(base, m, true, seed).unwrap();
                let dec = recognize_pure_special(&g, base).expect("generated pure special graph");
                assert_eq!(dec.q, spec.q);
            }
        }
    }

    #[test]
    fn diamond_or_c5_examples() {
        assert!(is_diamond_or_c5(&Graph::cycle(5)));
        assert!(!is_diamond_or_c5(&Graph::complete(4)));
        assert!(is_diamond_or_c5(&Graph::diamond()));
    }

    #[test]
    fn prop1_examples() {
        let g = c4_pendant();
        let dec = recognize_pure_special(&g, Base::C4).unwrap();
        assert_eq!(prop1_isolating_set(&dec, &g, 0).unwrap(), VertexSet::from([0]));

        let spec = SpecialSpec::new(Base::C4, 11, vec![(0, 1)], vec![], vec![0, 0]).unwrap();
        let g = build_special(&spec).unwrap();
        let dec = recognize_pure_special(&g, Base::C4).unwrap();
        assert_eq!(prop1_isolating_set(&dec, &g, 0).unwrap(), VertexSet::from([0, 1]));

        // Constituent 2's cycle is 6..=9 hanging from 1 at vertex 6; 7 has degree 2.
        assert_eq!(g.degree(7), 2);
        let d = prop1_isolating_set(&dec, &g, 7).unwrap();
        assert_eq!(d, VertexSet::from([0, 7]));
        assert!(is_isolating(&g, CP, &d).unwrap());

        for v in g.vertices() {
            let d = prop1_isolating_set(&dec, &g, v).unwrap();
            assert_eq!(d.len(), 2);
            assert!(d.contains(v));
            assert!(is_isolating(&g, CP, &d).unwrap());
        }
        assert!(prop1_isolating_set(&dec, &g, 10).is_err());
    }

    #[test]
    fn spec_decomposition_matches_recognizer() {
        for seed in 0..20 {
            let (spec, g) = random_special(Base::C4, 23, true, seed).unwrap();
            let from_spec = spec.decomposition();
            let recognized = recognize_pure_special(&g, Base::C4).unwrap();
            assert_eq!(from_spec.connections(), recognized.connections());
            for (a, b) in from_spec.constituents.iter().zip(&recognized.constituents) {
                assert_eq!(a.vertices(), b.vertices());
                assert_eq!(a.attachment(), b.attachment());
            }
        }
    }

    #[test]
    fn decode_pruefer_small() {
        assert_eq!(decode_pruefer(&[3, 3, 3]), vec![(0, 3), (1, 3), (2, 3), (3, 4)]);
    }
}
