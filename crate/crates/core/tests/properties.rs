use proptest::prelude::*;
use proptest::sample::subsequence;

use cycle_isolation::exact::exact_isolation_number;
use cycle_isolation::harness::enumerate::canonical_code;
use cycle_isolation::harness::io::{decode_graph6, encode_graph6};
use cycle_isolation::{contains_family_graph, is_isolating, CycleFamily, Graph, VertexSet};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        let len = pairs.len();
        subsequence(pairs, 0..=len).prop_map(move |edges| Graph::from_edges(n, edges).unwrap())
    })
}

fn family() -> impl Strategy<Value = CycleFamily> {
    prop_oneof![
        Just(CycleFamily::AllCycles),
        Just(CycleFamily::NonTriangleCycles),
        Just(CycleFamily::FixedCycle(4)),
        Just(CycleFamily::FixedCycle(5)),
    ]
}

fn with_perm(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn relabelling_preserves_everything((g, perm) in with_perm(9), f in family()) {
        let h = g.relabel(&perm);
        prop_assert_eq!(contains_family_graph(&g, f), contains_family_graph(&h, f));
        prop_assert_eq!(exact_isolation_number(&g, f).unwrap().size, exact_isolation_number(&h, f).unwrap().size);
        prop_assert_eq!(canonical_code(&g), canonical_code(&h));
        if g.n() <= 8 {
            prop_assert!(g.is_isomorphic_small(&h).unwrap());
        }
    }

    #[test]
    fn components_partition_vertices_and_edges(g in graph(14)) {
        let comps = g.components();
        let mut seen: Vec<usize> = comps.iter().flat_map(|c| c.origin.iter().copied()).collect();
        seen.sort_unstable();
        prop_assert_eq!(seen, g.vertices().collect::<Vec<_>>());
        prop_assert_eq!(comps.iter().map(|c| c.graph.m()).sum::<usize>(), g.m());
        prop_assert!(comps.iter().all(|c| c.graph.is_connected()));
    }

    #[test]
    fn blocks_partition_edges(g in graph(14)) {
        let dec = g.blocks();
        prop_assert_eq!(dec.blocks.iter().map(|b| b.edges.len()).sum::<usize>(), g.m());
        let mut all: Vec<(usize, usize)> = dec.blocks.iter().flat_map(|b| b.edges.iter().copied()).collect();
        all.sort_unstable();
        all.dedup();
        prop_assert_eq!(all.len(), g.m());
    }

    #[test]
    fn isolation_is_monotone_under_supersets(g in graph(10), f in family(), extra in any::<u16>()) {
        let r = exact_isolation_number(&g, f).unwrap();
        let mut bigger = r.witness.clone();
        bigger.extend(g.vertices().filter(|v| extra >> (v % 16) & 1 == 1));
        prop_assert!(is_isolating(&g, f, &bigger).unwrap());
        prop_assert!(is_isolating(&g, f, &VertexSet::from_iter(g.vertices())).unwrap());
        if r.size > 0 {
            let mut smaller = r.witness.clone();
            smaller.remove(r.witness.last().unwrap());
            prop_assert!(!is_isolating(&g, f, &smaller).unwrap());
        }
    }

    #[test]
    fn deleting_vertices_never_raises_iota(g in graph(10), f in family(), mask in any::<u16>()) {
        let gone: VertexSet = g.vertices().filter(|v| mask >> v & 1 == 1).collect();
        let rest = g.delete_vertices(&gone).unwrap();
        prop_assert!(exact_isolation_number(&rest.graph, f).unwrap().size <= exact_isolation_number(&g, f).unwrap().size);
    }

    #[test]
    fn graph6_round_trip(g in graph(20)) {
        let s = encode_graph6(&g).unwrap();
        prop_assert!(s.bytes().all(|b| (63..=126).contains(&b)));
        prop_assert_eq!(decode_graph6(&s).unwrap(), g);
    }
}
