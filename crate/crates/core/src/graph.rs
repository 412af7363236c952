//! Immutable simple undirected graphs on dense vertex ids `0..n`.
//!
//! Every derived graph (vertex deletion, induced subgraph, component) is
//! returned as a [`SubgraphView`] that remembers where each of its vertices
//! came from, so vertex sets found on a piece can be lifted back to the
//! parent.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// A sorted, duplicate-free set of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn singleton(v: usize) -> Self {
        Self(vec![v])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn insert(&mut self, v: usize) -> bool {
        match self.0.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, v);
                true
            }
        }
    }

    pub fn remove(&mut self, v: usize) -> bool {
        match self.0.binary_search(&v) {
            Ok(pos) => {
                self.0.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.iter().filter(|&v| !other.contains(v)).collect()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().collect()
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(v: [usize; N]) -> Self {
        v.into_iter().collect()
    }
}

impl Extend<usize> for VertexSet {
    fn extend<I: IntoIterator<Item = usize>>(&mut self, iter: I) {
        self.0.extend(iter);
        self.0.sort_unstable();
        self.0.dedup();
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl serde::Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// Simple undirected graph with sorted adjacency lists.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges().collect::<Vec<_>>())
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge list. Duplicate edges collapse; self-loops
    /// and out-of-range ids are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidVertex { vertex: u.max(v), n });
            }
            if u == v {
                return Err(Error::Input(format!("self-loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Ok(Self { adj, m })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&w| w > u).map(move |&w| (u, w)))
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::InvalidVertex { vertex: v, n: self.n() })
        }
    }

    pub fn check_set(&self, xs: &VertexSet) -> Result<()> {
        match xs.last() {
            Some(v) => self.check_vertex(v),
            None => Ok(()),
        }
    }

    /// `X ∪ N(X)`.
    pub fn closed_neighborhood(&self, xs: &VertexSet) -> Result<VertexSet> {
        self.check_set(xs)?;
        Ok(self.closed_neighborhood_mask(xs.iter()).iter().enumerate().filter(|(_, &b)| b).map(|(v, _)| v).collect())
    }

    pub(crate) fn closed_neighborhood_mask(&self, xs: impl IntoIterator<Item = usize>) -> Vec<bool> {
        let mut mark = vec![false; self.n()];
        for x in xs {
            mark[x] = true;
            for &w in &self.adj[x] {
                mark[w] = true;
            }
        }
        mark
    }

    /// `G - X`.
    pub fn delete_vertices(&self, xs: &VertexSet) -> Result<SubgraphView> {
        self.check_set(xs)?;
        Ok(self.induced_by_mask(|v| !xs.contains(v)))
    }

    /// `G[X]`.
    pub fn induced(&self, keep: &VertexSet) -> Result<SubgraphView> {
        self.check_set(keep)?;
        Ok(self.induced_by_mask(|v| keep.contains(v)))
    }

    pub(crate) fn induced_by_mask(&self, keep: impl Fn(usize) -> bool) -> SubgraphView {
        let mut local = vec![usize::MAX; self.n()];
        let mut origin = Vec::new();
        for v in self.vertices() {
            if keep(v) {
                local[v] = origin.len();
                origin.push(v);
            }
        }
        let mut adj = vec![Vec::new(); origin.len()];
        let mut twice_m = 0;
        for (i, &v) in origin.iter().enumerate() {
            for &w in &self.adj[v] {
                if local[w] != usize::MAX {
                    adj[i].push(local[w]);
                }
            }
            twice_m += adj[i].len();
        }
        SubgraphView {
            graph: Graph { adj, m: twice_m / 2 },
            origin,
        }
    }

    /// Connected components, ordered by smallest vertex id.
    pub fn components(&self) -> Vec<SubgraphView> {
        self.component_labels()
            .1
            .into_iter()
            .map(|verts| {
                let set: VertexSet = verts.into();
                self.induced_by_mask(|v| set.contains(v))
            })
            .collect()
    }

    /// Per-vertex component index plus the vertex lists of each component,
    /// both ordered by smallest member.
    pub fn component_labels(&self) -> (Vec<usize>, Vec<Vec<usize>>) {
        let mut label = vec![usize::MAX; self.n()];
        let mut comps = Vec::new();
        let mut queue = VecDeque::new();
        for s in self.vertices() {
            if label[s] != usize::MAX {
                continue;
            }
            let id = comps.len();
            let mut members = vec![s];
            label[s] = id;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if label[w] == usize::MAX {
                        label[w] = id;
                        members.push(w);
                        queue.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            comps.push(members);
        }
        (label, comps)
    }

    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.component_labels().1.len() == 1
    }

    /// Vertex of maximum degree, smallest id on ties.
    pub fn max_degree_vertex(&self) -> Result<usize> {
        if self.n() == 0 {
            return Err(Error::Input("max_degree_vertex on the empty graph".into()));
        }
        let best = self.max_degree();
        Ok(self.vertices().find(|&v| self.degree(v) == best).unwrap())
    }

    /// Biconnected decomposition (Hopcroft–Tarjan). Isolated vertices belong
    /// to no block.
    pub fn blocks(&self) -> BlockDecomposition {
        BlockFinder::new(self).run()
    }

    /// `perm[v]` is the new id of `v`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        Graph::from_edges(self.n(), self.edges().map(|(u, v)| (perm[u], perm[v]))).expect("relabel with a permutation")
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        Graph::from_edges(
            off + other.n(),
            self.edges().chain(other.edges().map(|(u, v)| (u + off, v + off))),
        )
        .expect("disjoint union of valid graphs")
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    pub fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
    }

    /// The diamond: a 4-cycle `0-1-2-3-0` with the chord `0-2`.
    pub fn diamond() -> Graph {
        Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap()
    }

    pub fn petersen() -> Graph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (i + 5, (i + 2) % 5 + 5));
        Graph::from_edges(10, outer.chain(spokes).chain(inner)).unwrap()
    }

    /// Exhaustive isomorphism test for graphs with at most
    /// [`ISOMORPHISM_LIMIT`] vertices.
    pub fn is_isomorphic_small(&self, other: &Graph) -> Result<bool> {
        for g in [self, other] {
            if g.n() > ISOMORPHISM_LIMIT {
                return Err(Error::TooLarge {
                    what: "isomorphism test",
                    n: g.n(),
                    limit: ISOMORPHISM_LIMIT,
                });
            }
        }
        Ok(isomorphic(self, other))
    }
}

pub const ISOMORPHISM_LIMIT: usize = 10;

fn isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.n() != h.n() || g.m() != h.m() {
        return false;
    }
    let mut dg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut dh: Vec<usize> = h.vertices().map(|v| h.degree(v)).collect();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return false;
    }
    let n = g.n();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend_isomorphism(g, h, 0, &mut map, &mut used)
}

fn extend_isomorphism(g: &Graph, h: &Graph, v: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    if v == g.n() {
        return true;
    }
    for image in h.vertices() {
        if used[image] || h.degree(image) != g.degree(v) {
            continue;
        }
        let consistent = (0..v).all(|u| g.has_edge(u, v) == h.has_edge(map[u], image));
        if !consistent {
            continue;
        }
        map[v] = image;
        used[image] = true;
        if extend_isomorphism(g, h, v + 1, map, used) {
            return true;
        }
        used[image] = false;
    }
    false
}

/// A graph derived from a parent together with the parent id of every
/// vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgraphView {
    pub graph: Graph,
    pub origin: Vec<usize>,
}

impl SubgraphView {
    pub fn identity(graph: Graph) -> Self {
        let origin = graph.vertices().collect();
        Self { graph, origin }
    }

    /// Maps a set of local ids to parent ids.
    pub fn lift(&self, xs: &VertexSet) -> VertexSet {
        xs.iter().map(|v| self.origin[v]).collect()
    }

    pub fn lift_vertex(&self, v: usize) -> usize {
        self.origin[v]
    }

    /// Local id of a parent vertex, if it survives in this view.
    pub fn local(&self, parent: usize) -> Option<usize> {
        self.origin.binary_search(&parent).ok()
    }

    /// Restricts a parent vertex set to the vertices present here, in local ids.
    pub fn restrict(&self, xs: &VertexSet) -> VertexSet {
        xs.iter().filter_map(|v| self.local(v)).collect()
    }

    /// Re-expresses this view (taken of `parent.graph`) relative to the
    /// graph `parent` was itself taken from.
    pub fn compose(&self, parent: &SubgraphView) -> SubgraphView {
        SubgraphView {
            graph: self.graph.clone(),
            origin: self.origin.iter().map(|&v| parent.origin[v]).collect(),
        }
    }
}

/// One block of a biconnected decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub vertices: VertexSet,
    pub edges: Vec<(usize, usize)>,
}

impl Block {
    pub fn is_bridge(&self) -> bool {
        self.edges.len() == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
    pub cut_vertices: VertexSet,
}

struct BlockFinder<'a> {
    g: &'a Graph,
    disc: Vec<usize>,
    low: Vec<usize>,
    time: usize,
    stack: Vec<(usize, usize)>,
    blocks: Vec<Block>,
    cuts: Vec<bool>,
}

impl<'a> BlockFinder<'a> {
    fn new(g: &'a Graph) -> Self {
        Self {
            g,
            disc: vec![usize::MAX; g.n()],
            low: vec![0; g.n()],
            time: 0,
            stack: Vec::new(),
            blocks: Vec::new(),
            cuts: vec![false; g.n()],
        }
    }

    fn run(mut self) -> BlockDecomposition {
        for root in self.g.vertices() {
            if self.disc[root] == usize::MAX {
                self.visit(root, usize::MAX);
            }
        }
        let mut blocks = self.blocks;
        for b in &mut blocks {
            b.edges.sort_unstable();
        }
        blocks.sort_by(|a, b| a.edges[0].cmp(&b.edges[0]));
        BlockDecomposition {
            blocks,
            cut_vertices: self.cuts.iter().enumerate().filter(|(_, &c)| c).map(|(v, _)| v).collect(),
        }
    }

    fn visit(&mut self, u: usize, parent: usize) {
        self.disc[u] = self.time;
        self.low[u] = self.time;
        self.time += 1;
        let mut children = 0;
        for &w in self.g.neighbors(u) {
            if self.disc[w] == usize::MAX {
                children += 1;
                self.stack.push((u.min(w), u.max(w)));
                self.visit(w, u);
                self.low[u] = self.low[u].min(self.low[w]);
                if self.low[w] >= self.disc[u] {
                    if parent != usize::MAX || children > 1 {
                        self.cuts[u] = true;
                    }
                    self.pop_block(u, w);
                }
            } else if w != parent && self.disc[w] < self.disc[u] {
                self.stack.push((w.min(u), w.max(u)));
                self.low[u] = self.low[u].min(self.disc[w]);
            }
        }
        if parent == usize::MAX && children <= 1 {
            self.cuts[u] = false;
        }
    }

    fn pop_block(&mut self, u: usize, w: usize) {
        let target = (u.min(w), u.max(w));
        let mut edges = Vec::new();
        while let Some(e) = self.stack.pop() {
            edges.push(e);
            if e == target {
                break;
            }
        }
        let vertices = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        self.blocks.push(Block { vertices, edges });
    }
}

/// Repeatedly removes isolated vertices and leaves. Returns the remaining
/// 2-core together with the removed vertices (parent ids).
pub fn strip_leaves(g: &Graph) -> (SubgraphView, VertexSet) {
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut removed = vec![false; g.n()];
    let mut queue: VecDeque<usize> = g.vertices().filter(|&v| deg[v] <= 1).collect();
    while let Some(v) = queue.pop_front() {
        if removed[v] {
            continue;
        }
        removed[v] = true;
        for &w in g.neighbors(v) {
            if !removed[w] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    queue.push_back(w);
                }
            }
        }
    }
    let view = g.induced_by_mask(|v| !removed[v]);
    let gone = g.vertices().filter(|&v| removed[v]).collect();
    (view, gone)
}
