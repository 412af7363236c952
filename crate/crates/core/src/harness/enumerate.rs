//! Connected graphs on at most seven vertices, one per isomorphism class.
//!
//! Graphs on `n` vertices are grown from the classes on `n - 1` vertices by
//! adding a vertex with every nonempty neighbour set; every connected graph
//! arises this way because it has a non-cut vertex. Duplicates are removed
//! through a canonical code: the smallest upper-triangle bit string over all
//! relabellings that respect colour-refinement classes.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const ENUMERATION_LIMIT: usize = 7;

/// Representatives of every connected graph with `1 <= n <= max_n`, ordered
/// by `n`, then `m`, then canonical code.
pub fn enumerate_connected(max_n: usize) -> Result<Vec<Graph>> {
    if max_n > ENUMERATION_LIMIT {
        return Err(Error::TooLarge {
            what: "built-in enumeration (pipe a graph6 file through --input instead)",
            n: max_n,
            limit: ENUMERATION_LIMIT,
        });
    }
    let mut out = Vec::new();
    if max_n == 0 {
        return Ok(out);
    }
    let mut layer: Vec<Graph> = vec![Graph::empty(1)];
    for n in 2..=max_n + 1 {
        layer.sort_by_key(|g| (g.m(), canonical_code(g)));
        out.extend(layer.iter().cloned());
        if n > max_n {
            break;
        }
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for g in &layer {
            let old: Vec<(usize, usize)> = g.edges().collect();
            for mask in 1u32..(1 << (n - 1)) {
                let mut edges = old.clone();
                edges.extend((0..n - 1).filter(|&u| mask >> u & 1 == 1).map(|u| (u, n - 1)));
                let h = Graph::from_edges(n, edges).expect("valid by construction");
                if seen.insert(canonical_code(&h)) {
                    next.push(h);
                }
            }
        }
        layer = next;
    }
    Ok(out)
}

/// Isomorphism-invariant code for graphs with at most eleven vertices.
pub fn canonical_code(g: &Graph) -> u64 {
    canonical_labelling(g).0
}

/// The relabelling of `g` whose code is [`canonical_code`].
pub fn canonical_form(g: &Graph) -> Graph {
    g.relabel(&canonical_labelling(g).1)
}

fn canonical_labelling(g: &Graph) -> (u64, Vec<usize>) {
    let n = g.n();
    assert!(n * n.saturating_sub(1) / 2 <= 64, "canonical code needs n <= 11");
    let colour = refine(g);
    // Vertices grouped by colour; a relabelling keeps the groups in colour
    // order and permutes freely inside each group.
    let groups: Vec<Vec<usize>> = {
        let mut order: Vec<usize> = g.vertices().collect();
        order.sort_by_key(|&v| colour[v]);
        order.into_iter().chunk_by(|&v| colour[v]).into_iter().map(|(_, c)| c.collect()).collect()
    };
    let mut best = (u64::MAX, Vec::new());
    let mut perm = vec![0; n];
    for_each_layout(&groups, 0, &mut Vec::new(), &mut |order| {
        for (pos, &v) in order.iter().enumerate() {
            perm[v] = pos;
        }
        let code = code_under(g, &perm);
        if code < best.0 {
            best = (code, perm.clone());
        }
    });
    best
}

fn code_under(g: &Graph, perm: &[usize]) -> u64 {
    let mut code = 0u64;
    for (u, v) in g.edges() {
        let (i, j) = if perm[u] < perm[v] { (perm[u], perm[v]) } else { (perm[v], perm[u]) };
        code |= 1 << (j * (j - 1) / 2 + i);
    }
    code
}

fn for_each_layout(groups: &[Vec<usize>], at: usize, prefix: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    let Some(group) = groups.get(at) else {
        f(prefix);
        return;
    };
    for p in group.iter().copied().permutations(group.len()) {
        let len = prefix.len();
        prefix.extend(p);
        for_each_layout(groups, at + 1, prefix, f);
        prefix.truncate(len);
    }
}

/// Stable colour refinement with colours named by sorted signatures, so
/// the final colouring is invariant under relabelling.
fn refine(g: &Graph) -> Vec<usize> {
    let mut colour: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut classes = colour.iter().collect::<BTreeSet<_>>().len();
    loop {
        let sig: Vec<(usize, Vec<usize>)> = g
            .vertices()
            .map(|v| (colour[v], g.neighbors(v).iter().map(|&u| colour[u]).sorted().collect()))
            .collect();
        let names: Vec<&(usize, Vec<usize>)> = sig.iter().collect::<BTreeSet<_>>().into_iter().collect();
        colour = sig.iter().map(|s| names.binary_search(&s).unwrap()).collect();
        if names.len() == classes {
            return colour;
        }
        classes = names.len();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_enumerations() {
        let three = enumerate_connected(3).unwrap();
        assert_eq!(three.len(), 4);
        assert!(three.contains(&Graph::complete(3)));
        let four = enumerate_connected(4).unwrap();
        let two_regular: Vec<_> = four.iter().filter(|g| g.n() == 4 && g.vertices().all(|v| g.degree(v) == 2)).collect();
        assert_eq!(two_regular.len(), 1);
        assert!(two_regular[0].is_isomorphic_small(&Graph::cycle(4)).unwrap());
        assert!(enumerate_connected(8).is_err());
    }

    #[test]
    fn duplicate_free_up_to_five() {
        let all = enumerate_connected(5).unwrap();
        for (i, g) in all.iter().enumerate() {
            assert!(g.is_connected());
            for h in &all[i + 1..] {
                assert!(!g.is_isomorphic_small(h).unwrap());
            }
        }
    }

    #[test]
    fn canonical_code_ignores_labels() {
        let p = Graph::petersen();
        let perm = [3, 7, 0, 9, 1, 5, 2, 8, 6, 4];
        assert_eq!(canonical_code(&p), canonical_code(&p.relabel(&perm)));
        assert_ne!(canonical_code(&Graph::path(4)), canonical_code(&Graph::star(3)));
        let c5 = Graph::cycle(5).relabel(&[2, 4, 1, 0, 3]);
        assert_eq!(canonical_form(&c5), canonical_form(&Graph::cycle(5)));
    }
}
