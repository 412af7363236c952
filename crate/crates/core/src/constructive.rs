//! Constructive non-triangle-cycle isolation.
//!
//! [`construct_isolating_set`] takes a connected graph other than the
//! 4-cycle and returns a set `D` such that
//!
//! * (P1) `G - N[D]` has no cycle of length at least four,
//! * (P2) `6|D| <= m + 1`,
//! * (P3) `6|D| <= m` unless `G` is a pure C4-special graph, a diamond or a
//!   5-cycle.
//!
//! It picks a vertex `v` of maximum degree, splits `G - N[v]` into
//! components, and dispatches on how those components hang off `N(v)`.
//! Extremal components contribute their prescribed-vertex sets from
//! [`prop1_isolating_set`]; every other piece is solved recursively on a
//! strictly smaller edge set. Every node re-verifies (P1)–(P3) before
//! returning, so a wrong branch surfaces as [`Error::Internal`] rather than
//! as an unchecked set.

use std::fmt;

use serde::Serialize;

use crate::detect::{contains_family_graph, is_isolating, CycleFamily};
use crate::error::{Error, Result};
use crate::graph::{strip_leaves, Graph, SubgraphView, VertexSet};
use crate::special::{is_diamond_or_c5, is_cprime_extremal, prop1_isolating_set, recognize_pure_special, Base};

const CP: CycleFamily = CycleFamily::NonTriangleCycles;

/// Repeatedly deletes isolated vertices and leaves. Isolation numbers for
/// any cycle family are unchanged.
pub fn reduce_leaves(g: &Graph) -> (SubgraphView, VertexSet) {
    strip_leaves(g)
}

/// Deletes a fragment `Y` that touches the rest of the graph only through
/// `x` and carries no family cycle together with `x`. Isolating sets of the
/// result isolate `g` as well.
pub fn prune_dominated_fragment(g: &Graph, x: usize, y: &VertexSet, family: CycleFamily) -> Result<SubgraphView> {
    g.check_vertex(x)?;
    g.check_set(y)?;
    if y.contains(x) {
        return Err(Error::Precondition(format!("x = {x} lies in Y")));
    }
    let reach = g.closed_neighborhood(y)?;
    if let Some(bad) = reach.iter().find(|&u| !y.contains(u) && u != x) {
        return Err(Error::Precondition(format!(
            "N[Y] meets G - Y outside {{x}} at vertex {bad}"
        )));
    }
    let mut with_x = y.clone();
    with_x.insert(x);
    if contains_family_graph(&g.induced(&with_x)?.graph, family) {
        return Err(Error::Precondition(format!("G[{{x}} ∪ Y] contains a {family} graph")));
    }
    g.delete_vertices(y)
}

/// `G[Y]` has no family cycle and every component of `G - Y` sends at most
/// one edge into `Y`.
pub fn link_extension_applies(g: &Graph, y: &VertexSet, family: CycleFamily) -> Result<bool> {
    if contains_family_graph(&g.induced(y)?.graph, family) {
        return Ok(false);
    }
    let rest = g.delete_vertices(y)?;
    let (label, comps) = rest.graph.component_labels();
    let mut crossing = vec![0usize; comps.len()];
    for u in y.iter() {
        for &w in g.neighbors(u) {
            if let Some(local) = rest.local(w) {
                crossing[label[local]] += 1;
            }
        }
    }
    Ok(crossing.iter().all(|&c| c <= 1))
}

/// Class of a component of `G - N[v]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ComponentClass {
    /// Pure C4-special.
    PureSpecial { q: usize },
    /// Diamond or 5-cycle.
    DiamondOrC5,
    /// A 4-cycle.
    FourCycle,
    /// Anything else.
    Other,
}

impl ComponentClass {
    pub fn of(h: &Graph) -> Self {
        if h.n() == 4 && h.m() == 4 && h.vertices().all(|u| h.degree(u) == 2) {
            ComponentClass::FourCycle
        } else if is_diamond_or_c5(h) {
            ComponentClass::DiamondOrC5
        } else if let Some(dec) = recognize_pure_special(h, Base::C4) {
            ComponentClass::PureSpecial { q: dec.q }
        } else {
            ComponentClass::Other
        }
    }
}

#[derive(Clone, Debug)]
pub struct ComponentInfo {
    /// The component, with ids of the graph it was taken from.
    pub view: SubgraphView,
    pub class: ComponentClass,
    pub m: usize,
    /// Edges `(x, y)` with `x ∈ N(v)` and `y` in the component, sorted.
    pub links: Vec<(usize, usize)>,
    /// Lexicographically smallest link edge.
    pub anchor: (usize, usize),
    /// The vertices of `N(v)` the component is linked to.
    pub linked_to: VertexSet,
}

impl ComponentInfo {
    pub fn vertices(&self) -> VertexSet {
        self.view.origin.iter().copied().collect()
    }

    pub fn contains(&self, u: usize) -> bool {
        self.view.local(u).is_some()
    }

    pub fn linked_only_to(&self, x: usize) -> bool {
        self.linked_to.len() == 1 && self.linked_to.contains(x)
    }

    /// Smallest neighbour of `x` inside the component.
    fn link_end(&self, x: usize) -> Option<usize> {
        self.links.iter().find(|&&(a, _)| a == x).map(|&(_, b)| b)
    }
}

#[derive(Clone, Debug)]
pub struct ComponentClassification {
    pub v: usize,
    /// Ordered by smallest vertex.
    pub components: Vec<ComponentInfo>,
}

/// Splits `G - N[v]` into components and classifies each.
pub fn classify_components(g: &Graph, v: usize) -> Result<ComponentClassification> {
    g.check_vertex(v)?;
    if !g.is_connected() {
        return Err(Error::Precondition("classify_components needs a connected graph".into()));
    }
    let closed = g.closed_neighborhood(&VertexSet::singleton(v))?;
    if closed.len() == g.n() {
        return Err(Error::Precondition(format!("N[{v}] is the whole vertex set")));
    }
    let rest = g.delete_vertices(&closed)?;
    let components = rest
        .graph
        .components()
        .into_iter()
        .map(|c| {
            let view = c.compose(&rest);
            let mut links: Vec<(usize, usize)> = view
                .origin
                .iter()
                .flat_map(|&y| {
                    g.neighbors(y)
                        .iter()
                        .filter(|&&x| x != v && closed.contains(x))
                        .map(move |&x| (x, y))
                })
                .collect();
            links.sort_unstable();
            let linked_to = links.iter().map(|&(x, _)| x).collect();
            ComponentInfo {
                class: ComponentClass::of(&view.graph),
                m: view.graph.m(),
                anchor: links[0],
                links,
                linked_to,
                view,
            }
        })
        .collect();
    Ok(ComponentClassification { v, components })
}

/// Edge bookkeeping around `v`: the three smallest edges at `v`, one anchor
/// edge per component, and the edge classes `E(G[N[v]])`,
/// `E(N(v), V(G - N[v]))` and the component edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseAccounting {
    pub a1: [(usize, usize); 3],
    pub a2: Vec<(usize, usize)>,
    pub m1: usize,
    pub m2: usize,
    pub m3: usize,
    pub a: usize,
    pub b: usize,
}

impl CaseAccounting {
    pub fn new(g: &Graph, cls: &ComponentClassification) -> Result<Self> {
        let v = cls.v;
        if g.degree(v) < 3 {
            return Err(Error::Precondition(format!("d({v}) < 3")));
        }
        let nv = g.neighbors(v);
        let a1 = [(v, nv[0]), (v, nv[1]), (v, nv[2])];
        let closed = g.closed_neighborhood(&VertexSet::singleton(v))?;
        let m1 = g.induced(&closed)?.graph.m();
        let m2: usize = cls.components.iter().map(|c| c.links.len()).sum();
        let m3: usize = cls.components.iter().map(|c| c.m).sum();
        let a2: Vec<(usize, usize)> = cls.components.iter().map(|c| c.anchor).collect();
        let b = cls.components.iter().filter(|c| c.class == ComponentClass::Other).count();
        Ok(Self {
            a: (m1 - 3) + (m2 - a2.len()),
            a1,
            a2,
            m1,
            m2,
            m3,
            b,
        })
    }

    /// `m = 3 + a + b + Σ_{other} m_i + Σ_{rest} (m_i + 1)`.
    pub fn identity_holds(&self, g: &Graph, cls: &ComponentClassification) -> bool {
        let tail: usize = cls
            .components
            .iter()
            .map(|c| match c.class {
                ComponentClass::Other => c.m,
                _ => c.m + 1,
            })
            .sum();
        g.m() == self.m1 + self.m2 + self.m3 && g.m() == 3 + self.a + self.b + tail
    }
}

/// One dispatch node of a construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceNode {
    pub case: &'static str,
    pub n: usize,
    pub m: usize,
    /// The vertex of maximum degree the case analysis pivots on.
    pub pivot: Option<usize>,
    /// The set returned at this node, in ids of the input graph.
    pub set: VertexSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub accounting: Option<CaseAccounting>,
    pub children: Vec<TraceNode>,
}

impl TraceNode {
    /// Case labels in pre-order.
    pub fn cases(&self) -> Vec<&'static str> {
        let mut out = vec![self.case];
        for c in &self.children {
            out.extend(c.cases());
        }
        out
    }

    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(TraceNode::depth).max().unwrap_or(0)
    }

    fn render(&self, indent: usize, out: &mut String) {
        use std::fmt::Write;
        let _ = writeln!(
            out,
            "{:indent$}[{}] n={} m={} pivot={:?} set={}",
            "",
            self.case,
            self.n,
            self.m,
            self.pivot,
            self.set,
            indent = indent
        );
        for c in &self.children {
            c.render(indent + 2, out);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionTrace {
    pub root: TraceNode,
}

impl ConstructionTrace {
    /// The set the construction returned.
    pub fn replay(&self) -> &VertexSet {
        &self.root.set
    }
}

impl fmt::Display for ConstructionTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.root.render(0, &mut s);
        f.write_str(&s)
    }
}

/// Builds a non-triangle-cycle isolating set within the edge bound.
pub fn construct_isolating_set(g: &Graph) -> Result<(VertexSet, ConstructionTrace)> {
    if !g.is_connected() {
        return Err(Error::Input("constructive isolation needs a connected graph".into()));
    }
    if g.n() == 4 && g.m() == 4 && g.vertices().all(|u| g.degree(u) == 2) {
        return Err(Error::Input("the 4-cycle is excluded from the edge bound".into()));
    }
    let origin: Vec<usize> = g.vertices().collect();
    let node = solve(g, &origin)?;
    let set = node.local_set.clone();
    Ok((set, ConstructionTrace { root: node.trace }))
}

struct Solved {
    local_set: VertexSet,
    trace: TraceNode,
}

/// Working state for one dispatch node.
struct Node<'a> {
    g: &'a Graph,
    origin: &'a [usize],
    pivot: Option<usize>,
    accounting: Option<CaseAccounting>,
    children: Vec<TraceNode>,
}

impl<'a> Node<'a> {
    fn new(g: &'a Graph, origin: &'a [usize]) -> Self {
        Self {
            g,
            origin,
            pivot: None,
            accounting: None,
            children: Vec::new(),
        }
    }

    /// Recursive solve on a connected piece of this node's graph.
    fn recurse(&mut self, piece: &SubgraphView) -> Result<VertexSet> {
        if piece.graph.m() >= self.g.m() {
            return Err(self.internal("recursion did not shrink the edge set", &VertexSet::new()));
        }
        let origin: Vec<usize> = piece.origin.iter().map(|&u| self.origin[u]).collect();
        let solved = solve(&piece.graph, &origin)?;
        self.children.push(solved.trace);
        Ok(piece.lift(&solved.local_set))
    }

    /// Set for a component of `G - N[v]` (or a similar piece): extremal
    /// pieces get the prescribed-vertex sets, the rest recurse.
    fn piece_set(&mut self, piece: &SubgraphView, class: ComponentClass, prescribed: Option<usize>) -> Result<VertexSet> {
        if let Some(set) = extremal_set(&piece.graph, class, prescribed.and_then(|p| piece.local(p))) {
            return Ok(piece.lift(&set));
        }
        match class {
            ComponentClass::FourCycle => Err(self.internal("a 4-cycle piece reached the recursive solver", &VertexSet::new())),
            _ => self.recurse(piece),
        }
    }

    fn internal(&self, message: &str, set: &VertexSet) -> Error {
        let node = self.finish_trace("error", set);
        Error::Internal {
            message: format!("{message} (graph n={}, m={}, edges={:?})", self.g.n(), self.g.m(), self.g.edges().collect::<Vec<_>>()),
            trace: ConstructionTrace { root: node }.to_string(),
        }
    }

    fn finish_trace(&self, case: &'static str, set: &VertexSet) -> TraceNode {
        TraceNode {
            case,
            n: self.g.n(),
            m: self.g.m(),
            pivot: self.pivot.map(|p| self.origin[p]),
            set: set.iter().map(|u| self.origin[u]).collect(),
            accounting: self.accounting.clone(),
            children: self.children.clone(),
        }
    }

    /// Verifies (P1)–(P3) and packages the node.
    fn finish(self, case: &'static str, set: VertexSet) -> Result<Solved> {
        let g = self.g;
        if !is_isolating(g, CP, &set)? {
            return Err(self.internal(&format!("case {case}: set {set} does not isolate"), &set));
        }
        let six = 6 * set.len();
        if six > g.m() + 1 {
            return Err(self.internal(&format!("case {case}: 6|D| = {six} exceeds m + 1 = {}", g.m() + 1), &set));
        }
        if six == g.m() + 1 && !is_cprime_extremal(g) {
            return Err(self.internal(&format!("case {case}: 6|D| = m + 1 on a non-extremal graph"), &set));
        }
        let trace = self.finish_trace(case, &set);
        Ok(Solved { local_set: set, trace })
    }
}

/// Prescribed-vertex set for an extremal piece; `None` for other pieces.
fn extremal_set(h: &Graph, class: ComponentClass, prescribed: Option<usize>) -> Option<VertexSet> {
    match class {
        ComponentClass::DiamondOrC5 => Some(VertexSet::singleton(prescribed.unwrap_or(0))),
        ComponentClass::PureSpecial { .. } => {
            let dec = recognize_pure_special(h, Base::C4)?;
            let at = prescribed.unwrap_or(dec.constituents[0].connection);
            prop1_isolating_set(&dec, h, at).ok()
        }
        _ => None,
    }
}

fn is_four_cycle(g: &Graph) -> bool {
    g.n() == 4 && g.m() == 4 && g.vertices().all(|u| g.degree(u) == 2)
}

fn solve(g: &Graph, origin: &[usize]) -> Result<Solved> {
    let mut node = Node::new(g, origin);
    if g.m() <= 4 {
        return node.finish("m<=4", VertexSet::new());
    }
    if g.max_degree() == 2 {
        return if g.m() == g.n() {
            node.finish("cycle", VertexSet::singleton(0))
        } else {
            node.finish("path", VertexSet::new())
        };
    }
    if !contains_family_graph(g, CP) {
        return node.finish("no-long-cycle", VertexSet::new());
    }
    let v = g.max_degree_vertex()?;
    node.pivot = Some(v);
    if g.degree(v) + 1 == g.n() {
        return node.finish("closed-neighborhood", VertexSet::singleton(v));
    }
    let cls = classify_components(g, v)?;
    let acc = CaseAccounting::new(g, &cls)?;
    if !acc.identity_holds(g, &cls) {
        return Err(node.internal("edge accounting identity failed", &VertexSet::new()));
    }
    node.accounting = Some(acc.clone());
    if cls.components.iter().any(|c| c.class == ComponentClass::FourCycle) {
        case_two(node, &cls)
    } else {
        case_one(node, &cls, &acc)
    }
}

fn case_one(mut node: Node<'_>, cls: &ComponentClassification, acc: &CaseAccounting) -> Result<Solved> {
    let g = node.g;
    let v = cls.v;
    if acc.a + acc.b >= 3 {
        let mut d = VertexSet::singleton(v);
        for c in &cls.components {
            d.extend(node.piece_set(&c.view, c.class, None)?.iter());
        }
        return node.finish("1", d);
    }
    let closed = g.closed_neighborhood(&VertexSet::singleton(v))?;
    if contains_family_graph(&g.induced(&closed)?.graph, CP) {
        // N[v] is a 4-cycle through v; anchoring each component's set at its
        // link vertex dominates every x_H.
        let mut d = VertexSet::new();
        for c in &cls.components {
            d.extend(node.piece_set(&c.view, c.class, Some(c.anchor.1))?.iter());
        }
        return node.finish("1.1", d);
    }
    let extra = cls
        .components
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.links.iter().filter(move |&&e| e != c.anchor).map(move |&e| (e, i)))
        .min();
    let Some(((x, y), i)) = extra else {
        // Every component hangs from N[v] by its anchor alone.
        let mut d = VertexSet::new();
        for c in &cls.components {
            d.extend(node.piece_set(&c.view, c.class, None)?.iter());
        }
        return node.finish("1.2-lift", d);
    };
    let hi = &cls.components[i];
    let star = g.delete_vertices(&hi.vertices())?;
    if is_four_cycle(&star.graph) || !star.graph.is_connected() {
        return Err(node.internal("G - V(H_i) is not a connected non-C4 graph", &VertexSet::new()));
    }
    match hi.class {
        ComponentClass::PureSpecial { .. } => {
            let dec = recognize_pure_special(&hi.view.graph, Base::C4).unwrap();
            let lift = |u: usize| hi.view.origin[u];
            let xs: VertexSet = dec.constituents.iter().map(|c| lift(c.attachment())).collect();
            let ys: Vec<usize> = dec.constituents.iter().map(|c| lift(c.cycle[2])).collect();
            let rest: VertexSet = hi.vertices().difference(&ys.iter().copied().collect());
            let outer_degree = |w: usize| g.neighbors(w).iter().filter(|&&u| !rest.contains(u)).count();
            let d_star = node.recurse(&star)?;
            match ys.iter().position(|&w| outer_degree(w) >= 2) {
                None => node.finish("1.2.1", xs.union(&d_star)),
                Some(j) => {
                    let mut d = xs;
                    d.remove(lift(dec.constituents[j].attachment()));
                    d.insert(ys[j]);
                    node.finish("1.2.1-opposite", d.union(&d_star))
                }
            }
        }
        ComponentClass::DiamondOrC5 => {
            let yh = hi.anchor.1;
            let h = &hi.view.graph;
            let (ly, lyh) = (hi.view.local(y).unwrap(), hi.view.local(yh).unwrap());
            let covers = |w: usize| (w == ly || h.has_edge(w, ly)) && (w == lyh || h.has_edge(w, lyh));
            let w = h.vertices().find(|&w| covers(w)).ok_or_else(|| node.internal("no vertex dominates both link ends", &VertexSet::new()))?;
            let near: VertexSet = hi.view.lift(&h.closed_neighborhood(&VertexSet::singleton(w))?);
            let far = hi.vertices().difference(&near);
            let gy = g.delete_vertices(&near)?;
            let far_local = gy.restrict(&far);
            let touching: VertexSet = far_local
                .iter()
                .flat_map(|u| gy.graph.neighbors(u).iter().copied())
                .filter(|&u| !far_local.contains(u))
                .collect();
            let anchor = match touching.len() {
                0 => gy.graph.vertices().find(|&u| !far_local.contains(u)),
                1 => touching.last(),
                _ => None,
            };
            let Some(anchor) = anchor else {
                return Err(node.internal("fragment touches G* at two vertices", &VertexSet::new()));
            };
            if let Err(e) = prune_dominated_fragment(&gy.graph, anchor, &far_local, CP) {
                return Err(node.internal(&format!("fragment pruning failed: {e}"), &VertexSet::new()));
            }
            let d_star = node.recurse(&star)?;
            let mut d = d_star;
            d.insert(hi.view.origin[w]);
            node.finish("1.2.2", d)
        }
        ComponentClass::Other => case_one_two_three(node, cls, acc, i, x),
        ComponentClass::FourCycle => unreachable!("case one has no 4-cycle components"),
    }
}

fn case_one_two_three(
    mut node: Node<'_>,
    cls: &ComponentClassification,
    acc: &CaseAccounting,
    i: usize,
    x: usize,
) -> Result<Solved> {
    let g = node.g;
    let v = cls.v;
    let hi = &cls.components[i];
    let x_prime = acc
        .a1
        .iter()
        .map(|&(_, t)| t)
        .find(|&t| t != hi.anchor.0 && t != x)
        .expect("three neighbours, two excluded");

    let mut parts: Vec<(usize, VertexSet)> = Vec::new();
    for (j, c) in cls.components.iter().enumerate() {
        if j != i {
            parts.push((j, node.piece_set(&c.view, c.class, Some(c.anchor.1))?));
        }
    }
    let d_x: VertexSet = parts.iter().flat_map(|(_, d)| d.iter()).collect();

    let mut keep = g.closed_neighborhood(&VertexSet::singleton(v))?;
    keep.extend(hi.vertices().iter());
    let gv = g.induced(&keep)?;
    let trimmed = gv.graph.delete_vertices(&VertexSet::singleton(gv.local(x_prime).unwrap()))?.compose(&gv);

    if !is_four_cycle(&trimmed.graph) {
        let d_v = node.recurse(&trimmed)?;
        return node.finish("1.2.3", d_v.union(&d_x));
    }
    if parts.is_empty() {
        return whole_graph_special(node, "1.2.3-special", v);
    }
    if let Some(&(h, ref dh)) = parts.iter().find(|(j, _)| cls.components[*j].class == ComponentClass::DiamondOrC5) {
        let mut d = d_x.difference(dh);
        d.insert(cls.components[h].anchor.0);
        return node.finish("1.2.3-diamond-or-c5", d);
    }
    for (h, dh) in &parts {
        let c = &cls.components[*h];
        let Some(dec) = recognize_pure_special(&c.view.graph, Base::C4) else {
            continue;
        };
        let y_local = c.view.local(c.anchor.1).unwrap();
        let j_prime = dec.constituent_of(y_local).unwrap();
        if dec.constituents[j_prime].connection != y_local {
            let mut d = d_x.difference(dh);
            d.insert(c.anchor.0);
            for (j, con) in dec.constituents.iter().enumerate() {
                if j != j_prime {
                    d.insert(c.view.origin[con.connection]);
                }
            }
            return node.finish("1.2.3-shift", d);
        }
    }
    if parts.iter().any(|(h, _)| cls.components[*h].anchor.0 != x_prime) {
        return node.finish("1.2.3-dx", d_x);
    }
    whole_graph_special(node, "1.2.3-special", v)
}

/// The whole graph is pure C4-special; return its prescribed-vertex set.
fn whole_graph_special(node: Node<'_>, case: &'static str, at: usize) -> Result<Solved> {
    match recognize_pure_special(node.g, Base::C4) {
        Some(dec) => {
            let d = prop1_isolating_set(&dec, node.g, at)?;
            node.finish(case, d)
        }
        None => Err(node.internal("expected a pure C4-special graph", &VertexSet::new())),
    }
}

fn case_two(node: Node<'_>, cls: &ComponentClassification) -> Result<Solved> {
    let single = cls
        .components
        .iter()
        .position(|c| c.class == ComponentClass::FourCycle && c.linked_to.len() == 1);
    match single {
        Some(h) => case_two_two(node, cls, h),
        None => {
            let h = cls.components.iter().position(|c| c.class == ComponentClass::FourCycle).unwrap();
            case_two_one(node, cls, h)
        }
    }
}

/// Non-4-cycle components linked to `x` only, with their sets and link ends.
fn hanging_from(node: &mut Node<'_>, cls: &ComponentClassification, x: usize) -> Result<Vec<(usize, VertexSet)>> {
    let mut out = Vec::new();
    for (j, c) in cls.components.iter().enumerate() {
        if c.class != ComponentClass::FourCycle && c.linked_only_to(x) {
            out.push((j, node.piece_set(&c.view, c.class, None)?));
        }
    }
    Ok(out)
}

fn component_containing(g: &Graph, removed: &VertexSet, v: usize) -> Result<SubgraphView> {
    let rest = g.delete_vertices(removed)?;
    let local = rest.local(v).unwrap();
    let comp = rest
        .graph
        .components()
        .into_iter()
        .find(|c| c.local(local).is_some())
        .unwrap();
    Ok(comp.compose(&rest))
}

fn case_two_one(mut node: Node<'_>, cls: &ComponentClassification, h: usize) -> Result<Solved> {
    let g = node.g;
    let v = cls.v;
    let hc = &cls.components[h];
    let x = hc.linked_to.iter().next().unwrap();
    let x_prime = hc.linked_to.iter().find(|&t| t != x).unwrap();
    let y1 = hc.link_end(x).unwrap();
    let y1_nbrs: Vec<usize> = g.neighbors(y1).iter().copied().filter(|&u| hc.contains(u)).collect();
    let removed: VertexSet = [x, y1, y1_nbrs[0], y1_nbrs[1]].into();
    let hanging = hanging_from(&mut node, cls, x)?;
    let hanging_union: VertexSet = hanging.iter().flat_map(|(_, d)| d.iter()).collect();
    let gv = component_containing(g, &removed, v)?;

    if !is_four_cycle(&gv.graph) {
        let d_v = node.recurse(&gv)?;
        let mut d = d_v.union(&hanging_union);
        d.insert(y1);
        if 6 * d.len() == g.m() + 1 {
            // Tight accounting forces every piece to be extremal; re-anchor
            // their sets at x' and at the link ends of x, and drop y1.
            let mut improved = extremal_set(&gv.graph, ComponentClass::of(&gv.graph), gv.local(x_prime)).map(|s| gv.lift(&s));
            for (j, _) in &hanging {
                let c = &cls.components[*j];
                let at = c.link_end(x).and_then(|u| c.view.local(u));
                improved = match (improved, extremal_set(&c.view.graph, c.class, at)) {
                    (Some(acc), Some(s)) => Some(acc.union(&c.view.lift(&s))),
                    _ => None,
                };
            }
            if let Some(better) = improved {
                if is_isolating(g, CP, &better)? && better.len() < d.len() {
                    return node.finish("2.1-improved", better);
                }
            }
        }
        return node.finish("2.1", d);
    }

    let mut with_x = hanging_union.clone();
    with_x.insert(x);
    if is_isolating(g, CP, &with_x)? {
        return node.finish("2.1-c4-path", with_x);
    }
    // The C4 piece is v x' z x3; x3 is v's other neighbour in it.
    let x3 = gv
        .origin
        .iter()
        .copied()
        .find(|&u| u != x_prime && g.has_edge(v, u))
        .ok_or_else(|| node.internal("no second neighbour of v in the C4 piece", &VertexSet::new()))?;
    let mut d = hanging_union;
    d.insert(y1);
    d.insert(x3);
    node.finish("2.1-c4-chord", d)
}

fn case_two_two(mut node: Node<'_>, cls: &ComponentClassification, h: usize) -> Result<Solved> {
    let g = node.g;
    let v = cls.v;
    let x = cls.components[h].linked_to.iter().next().unwrap();
    let mut removed = VertexSet::singleton(x);
    for c in &cls.components {
        if c.class == ComponentClass::FourCycle && c.linked_only_to(x) {
            removed.extend(c.vertices().iter());
        }
    }
    let hanging = hanging_from(&mut node, cls, x)?;
    let hanging_union: VertexSet = hanging.iter().flat_map(|(_, d)| d.iter()).collect();
    let gv = component_containing(g, &removed, v)?;

    let mut d = hanging_union.clone();
    d.insert(x);
    if is_four_cycle(&gv.graph) {
        return node.finish("2.2-c4", d);
    }
    let d_v = node.recurse(&gv)?;
    d.extend(d_v.iter());
    if 6 * d.len() < g.m() + 1 {
        return node.finish("2.2", d);
    }

    // Tight: every piece is extremal. Pieces are G_v* (linked to x at v) and
    // the hanging components (linked at their smallest neighbour of x).
    let mut pieces: Vec<(&SubgraphView, ComponentClass, usize)> = vec![(&gv, ComponentClass::of(&gv.graph), v)];
    for (j, _) in &hanging {
        let c = &cls.components[*j];
        pieces.push((&c.view, c.class, c.link_end(x).unwrap()));
    }
    if let Some(skip) = pieces.iter().position(|(_, class, _)| *class == ComponentClass::DiamondOrC5) {
        let mut smaller = VertexSet::singleton(x);
        for (k, &(q, class, _)) in pieces.iter().enumerate() {
            if k != skip {
                smaller.extend(q.lift(&extremal_set(&q.graph, class, None).unwrap_or_default()).iter());
            }
        }
        if is_isolating(g, CP, &smaller)? {
            return node.finish("2.2-drop-diamond-or-c5", smaller);
        }
        return node.finish("2.2", d);
    }
    let mut anchored = VertexSet::singleton(x);
    let mut droppable = None;
    for &(p, class, at) in &pieces {
        let local_at = p.local(at).unwrap();
        let Some(set) = extremal_set(&p.graph, class, Some(local_at)) else {
            return node.finish("2.2", d);
        };
        anchored.extend(p.lift(&set).iter());
        let dec = recognize_pure_special(&p.graph, Base::C4);
        if droppable.is_none() && dec.is_some_and(|dec| !dec.connections().contains(local_at)) {
            droppable = Some(at);
        }
    }
    match droppable {
        Some(y) => {
            anchored.remove(y);
            if is_isolating(g, CP, &anchored)? {
                return node.finish("2.2-drop-link", anchored);
            }
            node.finish("2.2", d)
        }
        None => node.finish("2.2-special", d),
    }
}

/// Non-triangle-cycle isolating set for an arbitrary graph: per component,
/// nothing for acyclic-long pieces, one vertex for a 4-cycle, otherwise the
/// construction.
pub fn construct_for_any(g: &Graph) -> Result<VertexSet> {
    let mut d = VertexSet::new();
    for comp in g.components() {
        let set = if is_four_cycle(&comp.graph) {
            VertexSet::singleton(0)
        } else {
            construct_isolating_set(&comp.graph)?.0
        };
        d.extend(comp.lift(&set).iter());
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::exact_isolation_number;
    use crate::special::{build_special, SpecialSpec};

    fn check(g: &Graph) -> (VertexSet, ConstructionTrace) {
        let (d, trace) = construct_isolating_set(g).unwrap_or_else(|e| panic!("{e}"));
        assert!(is_isolating(g, CP, &d).unwrap());
        assert!(6 * d.len() <= g.m() + 1);
        if !is_cprime_extremal(g) {
            assert!(6 * d.len() <= g.m());
        }
        assert_eq!(trace.replay(), &d);
        (d, trace)
    }

    #[test]
    fn reduce_leaves_examples() {
        let tree = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (1, 4), (4, 5)]).unwrap();
        assert_eq!(reduce_leaves(&tree).0.graph.n(), 0);
        let c4p = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]).unwrap();
        assert_eq!(reduce_leaves(&c4p).0.graph, Graph::cycle(4));
        assert_eq!(reduce_leaves(&Graph::cycle(5)).0.graph, Graph::cycle(5));
    }

    #[test]
    fn prune_examples() {
        // C5 on 0..5 with the pendant path 0-5-6-7.
        let g = Graph::from_edges(8, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (5, 6), (6, 7)]).unwrap();
        let pruned = prune_dominated_fragment(&g, 5, &[6, 7].into(), CP).unwrap();
        assert_eq!(pruned.graph.n(), 6);
        assert_eq!(pruned.graph.m(), 6);
        assert_eq!(exact_isolation_number(&pruned.graph, CP).unwrap().size, 1);
        assert_eq!(exact_isolation_number(&g, CP).unwrap().size, 1);

        let same = prune_dominated_fragment(&g, 0, &VertexSet::new(), CP).unwrap();
        assert_eq!(same.graph, g);

        assert!(prune_dominated_fragment(&g, 5, &[5].into(), CP).is_err());
        assert!(prune_dominated_fragment(&g, 0, &[6, 7].into(), CP).is_err());
        let err = prune_dominated_fragment(&Graph::cycle(5), 0, &[1, 2, 3].into(), CP).unwrap_err();
        assert!(err.to_string().contains("outside"));
        let err = prune_dominated_fragment(&Graph::cycle(4), 0, &[1, 2, 3].into(), CP).unwrap_err();
        assert!(err.to_string().contains("contains"));
    }

    #[test]
    fn link_extension_examples() {
        // Centre v = 0 with neighbours 1, 2, 3; a pendant-free C4 hangs from each.
        let mut edges = vec![(0, 1), (0, 2), (0, 3)];
        for (k, x) in [1usize, 2, 3].into_iter().enumerate() {
            let base = 4 + 4 * k;
            edges.extend([(base, base + 1), (base + 1, base + 2), (base + 2, base + 3), (base + 3, base), (x, base)]);
        }
        let g = Graph::from_edges(16, edges.clone()).unwrap();
        assert!(link_extension_applies(&g, &[0, 1, 2, 3].into(), CP).unwrap());

        edges.push((1, 6));
        let g2 = Graph::from_edges(16, edges).unwrap();
        assert!(!link_extension_applies(&g2, &[0, 1, 2, 3].into(), CP).unwrap());

        assert!(!link_extension_applies(&Graph::cycle(4), &[0, 1, 2, 3].into(), CP).unwrap());
    }

    #[test]
    fn classification_examples() {
        // v = 0 of degree 3; G - N[v] is the 4-cycle 4-5-6-7 hanging from 1.
        let g = Graph::from_edges(8, [(0, 1), (0, 2), (0, 3), (1, 4), (4, 5), (5, 6), (6, 7), (7, 4)]).unwrap();
        let cls = classify_components(&g, 0).unwrap();
        assert_eq!(cls.components.len(), 1);
        assert_eq!(cls.components[0].class, ComponentClass::FourCycle);
        assert_eq!(cls.components[0].anchor, (1, 4));

        let g = Graph::from_edges(9, [(0, 1), (0, 2), (0, 3), (1, 4), (4, 5), (5, 6), (6, 7), (7, 8), (8, 4)]).unwrap();
        let cls = classify_components(&g, 0).unwrap();
        assert_eq!(cls.components[0].class, ComponentClass::DiamondOrC5);

        let g = Graph::from_edges(9, [(0, 1), (0, 2), (0, 3), (1, 4), (4, 5), (5, 6), (6, 7), (7, 8), (8, 5)]).unwrap();
        let cls = classify_components(&g, 0).unwrap();
        assert_eq!(cls.components[0].class, ComponentClass::PureSpecial { q: 1 });

        assert!(classify_components(&Graph::complete(4), 0).is_err());
    }

    #[test]
    fn accounting_identity_on_examples() {
        let g = Graph::from_edges(9, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 4), (2, 5), (4, 5), (5, 6), (6, 7), (7, 8), (8, 5)]).unwrap();
        let cls = classify_components(&g, 0).unwrap();
        let acc = CaseAccounting::new(&g, &cls).unwrap();
        assert!(acc.identity_holds(&g, &cls));
        assert_eq!(acc.m1, 4);
    }

    #[test]
    fn construct_examples() {
        let (d, _) = check(&Graph::path(7));
        assert!(d.is_empty());

        let (d, _) = check(&Graph::cycle(5));
        assert_eq!(d.len(), 1);

        let (d, trace) = check(&Graph::complete(4));
        assert_eq!(d.len(), 1);
        assert_eq!(trace.root.case, "closed-neighborhood");

        let spec = SpecialSpec::new(Base::C4, 11, vec![(0, 1)], vec![], vec![0, 0]).unwrap();
        let (d, _) = check(&build_special(&spec).unwrap());
        assert_eq!(d.len(), 2);

        assert!(construct_isolating_set(&Graph::cycle(4)).is_err());
        assert!(construct_isolating_set(&Graph::empty(2)).is_err());
    }

    #[test]
    fn construction_is_deterministic() {
        let spec = SpecialSpec::new(Base::C4, 12, vec![(0, 1)], vec![(0, 1)], vec![1, 2]).unwrap();
        let g = build_special(&spec).unwrap();
        assert_eq!(construct_isolating_set(&g).unwrap(), construct_isolating_set(&g).unwrap());
    }

    #[test]
    fn construct_for_any_handles_four_cycles() {
        let g = Graph::cycle(4).disjoint_union(&Graph::cycle(5)).disjoint_union(&Graph::path(3));
        let d = construct_for_any(&g).unwrap();
        assert_eq!(d.len(), 2);
        assert!(is_isolating(&g, CP, &d).unwrap());
    }
}
