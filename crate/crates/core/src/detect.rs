//! Cycle-family membership tests, witness extraction, and isolating-set
//! validation.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// The forbidden family that defines isolation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CycleFamily {
    /// Every cycle.
    AllCycles,
    /// Cycles of length at least four.
    NonTriangleCycles,
    /// Cycles of exactly the given length (at least three).
    FixedCycle(usize),
}

impl CycleFamily {
    pub fn fixed(len: usize) -> Result<Self> {
        if len < 3 {
            return Err(Error::Input(format!("cycle length {len} is below 3")));
        }
        Ok(CycleFamily::FixedCycle(len))
    }

    /// Whether a cycle of length `len` belongs to the family.
    pub fn admits(self, len: usize) -> bool {
        match self {
            CycleFamily::AllCycles => len >= 3,
            CycleFamily::NonTriangleCycles => len >= 4,
            CycleFamily::FixedCycle(l) => len == l,
        }
    }

    pub fn name(self) -> String {
        match self {
            CycleFamily::AllCycles => "c".into(),
            CycleFamily::NonTriangleCycles => "cprime".into(),
            CycleFamily::FixedCycle(l) => format!("c{l}"),
        }
    }
}

impl fmt::Display for CycleFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for CycleFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "c" | "all" => Ok(CycleFamily::AllCycles),
            "cprime" | "c'" | "nontriangle" => Ok(CycleFamily::NonTriangleCycles),
            _ => {
                let len = s
                    .strip_prefix('c')
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| Error::Input(format!("unknown cycle family `{s}`")))?;
                CycleFamily::fixed(len)
            }
        }
    }
}

impl serde::Serialize for CycleFamily {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

/// An explicit cycle `v1 v2 … vr` of the host graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleWitness(pub Vec<usize>);

impl CycleWitness {
    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Closed walk over distinct vertices whose length the family admits.
    pub fn is_valid(&self, g: &Graph, family: CycleFamily) -> bool {
        let r = self.0.len();
        if r < 3 || !family.admits(r) || self.0.iter().any(|&v| v >= g.n()) {
            return false;
        }
        let distinct: VertexSet = self.0.iter().copied().collect();
        distinct.len() == r && (0..r).all(|i| g.has_edge(self.0[i], self.0[(i + 1) % r]))
    }
}

/// True iff `g` contains a member of `family` as a subgraph.
pub fn contains_family_graph(g: &Graph, family: CycleFamily) -> bool {
    match family {
        CycleFamily::AllCycles => {
            let (_, comps) = g.component_labels();
            g.m() + comps.len() > g.n()
        }
        CycleFamily::NonTriangleCycles => g.blocks().blocks.iter().any(|b| b.vertices.len() >= 4),
        CycleFamily::FixedCycle(4) => four_cycle(g).is_some(),
        CycleFamily::FixedCycle(len) => fixed_cycle(g, len).is_some(),
    }
}

pub fn find_family_witness(g: &Graph, family: CycleFamily) -> Option<CycleWitness> {
    let cycle = match family {
        CycleFamily::AllCycles => any_cycle(g),
        CycleFamily::NonTriangleCycles => long_cycle(g),
        CycleFamily::FixedCycle(4) => four_cycle(g),
        CycleFamily::FixedCycle(len) => fixed_cycle(g, len),
    }?;
    debug_assert!(CycleWitness(cycle.clone()).is_valid(g, family));
    Some(CycleWitness(cycle))
}

/// `D` isolates `family` in `g` iff `g - N[D]` contains no member of it.
pub fn is_isolating(g: &Graph, family: CycleFamily, d: &VertexSet) -> Result<bool> {
    g.check_set(d)?;
    let covered = g.closed_neighborhood_mask(d.iter());
    let rest = g.induced_by_mask(|v| !covered[v]);
    Ok(!contains_family_graph(&rest.graph, family))
}

/// Some cycle, found as a DFS back edge.
fn any_cycle(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    for root in g.vertices() {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut stack = vec![(root, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (u, next) = *top;
            if next == g.degree(u) {
                stack.pop();
                continue;
            }
            top.1 += 1;
            let w = g.neighbors(u)[next];
            if depth[w] == usize::MAX {
                depth[w] = depth[u] + 1;
                parent[w] = u;
                stack.push((w, 0));
            } else if w != parent[u] && depth[w] < depth[u] {
                let mut cycle = vec![u];
                let mut x = u;
                while x != w {
                    x = parent[x];
                    cycle.push(x);
                }
                return Some(cycle);
            }
        }
    }
    None
}

/// A cycle of length at least four, extracted from a block with four or
/// more vertices.
fn long_cycle(g: &Graph) -> Option<Vec<usize>> {
    let decomposition = g.blocks();
    let block = decomposition.blocks.iter().find(|b| b.vertices.len() >= 4)?;
    let view = g.induced(&block.vertices).expect("block vertices are valid");
    let local = cycle_in_biconnected(&view.graph);
    Some(local.into_iter().map(|v| view.origin[v]).collect())
}

/// `b` is 2-connected with at least four vertices.
fn cycle_in_biconnected(b: &Graph) -> Vec<usize> {
    if b.vertices().all(|v| b.degree(v) == 2) {
        let mut cycle = vec![0];
        let mut prev = 0;
        let mut cur = b.neighbors(0)[0];
        while cur != 0 {
            cycle.push(cur);
            let next = b.neighbors(cur).iter().copied().find(|&w| w != prev).unwrap();
            prev = cur;
            cur = next;
        }
        return cycle;
    }
    let pair = b
        .vertices()
        .flat_map(|u| (u + 1..b.n()).map(move |w| (u, w)))
        .find(|&(u, w)| !b.has_edge(u, w));
    match pair {
        None => vec![0, 1, 2, 3],
        Some((s, t)) => {
            let (p, q) = two_disjoint_paths(b, s, t);
            let mut cycle = p;
            cycle.extend(q.into_iter().rev().skip(1).take_while(|&v| v != s));
            cycle
        }
    }
}

/// Two internally vertex-disjoint `s`–`t` paths in a 2-connected graph,
/// via two unit-capacity augmentations on the vertex-split network.
fn two_disjoint_paths(g: &Graph, s: usize, t: usize) -> (Vec<usize>, Vec<usize>) {
    let n = g.n();
    // Node 2v is v-in, 2v+1 is v-out.
    let size = 2 * n;
    let mut cap = vec![vec![0i32; size]; size];
    for v in g.vertices() {
        cap[2 * v][2 * v + 1] = if v == s || v == t { 2 } else { 1 };
        for &w in g.neighbors(v) {
            cap[2 * v + 1][2 * w] = 1;
        }
    }
    let source = 2 * s + 1;
    let sink = 2 * t;
    let mut flow = vec![vec![0i32; size]; size];
    for _ in 0..2 {
        let mut pred = vec![usize::MAX; size];
        pred[source] = source;
        let mut queue = VecDeque::from([source]);
        while let Some(a) = queue.pop_front() {
            if a == sink {
                break;
            }
            for b in 0..size {
                if pred[b] == usize::MAX && cap[a][b] - flow[a][b] > 0 {
                    pred[b] = a;
                    queue.push_back(b);
                }
            }
        }
        assert!(pred[sink] != usize::MAX, "block is not 2-connected");
        let mut b = sink;
        while b != source {
            let a = pred[b];
            flow[a][b] += 1;
            flow[b][a] -= 1;
            b = a;
        }
    }
    let mut paths = Vec::with_capacity(2);
    let mut used = vec![vec![false; n]; n];
    for _ in 0..2 {
        let mut path = vec![s];
        let mut u = s;
        while u != t {
            let w = g
                .neighbors(u)
                .iter()
                .copied()
                .find(|&w| flow[2 * u + 1][2 * w] > 0 && !used[u][w])
                .expect("flow decomposes into paths");
            used[u][w] = true;
            path.push(w);
            u = w;
        }
        paths.push(path);
    }
    let q = paths.pop().unwrap();
    let p = paths.pop().unwrap();
    (p, q)
}

fn four_cycle(g: &Graph) -> Option<Vec<usize>> {
    for u in g.vertices() {
        for w in u + 1..g.n() {
            let mut common = g.neighbors(u).iter().filter(|x| g.neighbors(w).binary_search(x).is_ok());
            if let (Some(&a), Some(&b)) = (common.next(), common.next()) {
                return Some(vec![u, a, w, b]);
            }
        }
    }
    None
}

/// Cycle of exactly `len` vertices by bounded DFS from its smallest vertex.
fn fixed_cycle(g: &Graph, len: usize) -> Option<Vec<usize>> {
    fn extend(g: &Graph, len: usize, path: &mut Vec<usize>, on_path: &mut [bool]) -> bool {
        let start = path[0];
        let last = *path.last().unwrap();
        if path.len() == len {
            return g.has_edge(last, start);
        }
        for &w in g.neighbors(last) {
            if w > start && !on_path[w] {
                path.push(w);
                on_path[w] = true;
                if extend(g, len, path, on_path) {
                    return true;
                }
                on_path[w] = false;
                path.pop();
            }
        }
        false
    }
    if len < 3 || len > g.n() {
        return None;
    }
    let mut on_path = vec![false; g.n()];
    for s in g.vertices() {
        let mut path = vec![s];
        on_path[s] = true;
        if extend(g, len, &mut path, &mut on_path) {
            return Some(path);
        }
        on_path[s] = false;
    }
    None
}
