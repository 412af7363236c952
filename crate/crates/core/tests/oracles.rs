use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cycle_isolation::exact::exact_isolation_number;
use cycle_isolation::harness::census::{run_census, CensusOptions};
use cycle_isolation::harness::enumerate::enumerate_connected;
use cycle_isolation::harness::io::{decode_graph6, encode_graph6, InputGraph};
use cycle_isolation::harness::verify::random_block_graph;
use cycle_isolation::CycleFamily;

#[test]
fn census_component_split_matches_whole_graph() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let opts = CensusOptions {
        timings: false,
        ..CensusOptions::default()
    };
    for _ in 0..50 {
        let parts = rng.gen_range(2..=3);
        let g = (1..parts).fold(random_block_graph(8, &mut rng), |acc, _| acc.disjoint_union(&random_block_graph(8, &mut rng)));
        let report = run_census(&[InputGraph { line: 1, graph: g.clone() }], &opts).unwrap();
        assert_eq!(report.records.len(), g.components().len());
        for f in [CycleFamily::AllCycles, CycleFamily::NonTriangleCycles, CycleFamily::FixedCycle(4)] {
            let sum: usize = report.records.iter().map(|r| r.iota[&f.name()]).sum();
            assert_eq!(sum, exact_isolation_number(&g, f).unwrap().size);
        }
    }
}

#[test]
fn graph6_round_trips_every_enumerated_graph() {
    let all = enumerate_connected(7).unwrap();
    assert_eq!(all.len(), 996);
    for g in all {
        let s = encode_graph6(&g).unwrap();
        assert_eq!(decode_graph6(&s).unwrap(), g);
        assert_eq!(encode_graph6(&decode_graph6(&s).unwrap()).unwrap(), s);
    }
}

#[test]
fn enumeration_counts_per_order() {
    // Connected unlabelled graphs on 1..=7 vertices.
    let all = enumerate_connected(7).unwrap();
    let counts: Vec<usize> = (1..=7).map(|n| all.iter().filter(|g| g.n() == n).count()).collect();
    assert_eq!(counts, [1, 1, 2, 6, 21, 112, 853]);
}
