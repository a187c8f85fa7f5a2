mod common;

use common::*;
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use repshift_core::fingroup::{ElemSet, FiniteGroup};
use repshift_core::repshift::{build_shift_graph, BuildOptions};
use repshift_core::shiftgraph::{CardinalityClass, ShiftGraph};

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn fixture_graphs() -> Vec<ShiftGraph> {
    let mut out = Vec::new();
    for name in PRESENTATION_FIXTURES {
        for target in ["Z2", "Z3", "S3"] {
            let g = FiniteGroup::from_name(target).unwrap();
            let rg = build_shift_graph(&fixture(name), &g, &BuildOptions::default()).unwrap();
            if rg.graph.num_edges() <= 40 {
                out.push(rg.graph);
            }
        }
    }
    out
}

fn periodic(g: &ShiftGraph, r: usize) -> BigUint {
    g.count_periodic_points(r).unwrap()
}

fn check_block_invariance(g: &ShiftGraph) {
    let class = g.classify();
    for n in 1..=3 {
        let b = g.block_presentation(n).unwrap();
        assert_eq!(b.classify(), class, "n={n}");
        for r in 1..=6 {
            assert_eq!(periodic(&b, r), periodic(g, r), "n={n} r={r}");
        }
    }
}

fn check_finite_counts(g: &ShiftGraph) {
    let CardinalityClass::Finite(n) = g.classify() else { return };
    let cycles = simple_cycles(&g.prune());
    assert_eq!(cycles.iter().map(Vec::len).sum::<usize>() as u64, n);
    let lcm = cycles.iter().map(Vec::len).fold(1, |a, l| a / gcd(a, l) * l);
    for r in 1..=lcm.max(6) {
        assert!(periodic(g, r) <= BigUint::from(n));
    }
    assert_eq!(periodic(g, lcm), BigUint::from(n));
}

#[test]
fn fixture_graphs_are_block_invariant() {
    for g in fixture_graphs() {
        check_block_invariance(&g);
        check_finite_counts(&g);
        let p = g.prune();
        assert_eq!(p.prune(), p);
    }
}

#[test]
fn empty_and_cycle_graphs() {
    let empty = ShiftGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
    assert_eq!(empty.classify(), CardinalityClass::Finite(0));
    assert!(empty.prune().is_empty());
    let cycle = ShiftGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
    assert_eq!(cycle.classify(), CardinalityClass::Finite(4));
    assert_eq!(periodic(&cycle, 2), BigUint::from(0u8));
    assert_eq!(periodic(&cycle, 8), BigUint::from(4u8));
    let two_loops = ShiftGraph::from_edges(1, &[(0, 0), (0, 0)]).unwrap();
    assert_eq!(two_loops.classify(), CardinalityClass::Uncountable);
    assert_eq!(periodic(&two_loops, 10), BigUint::from(1024u16));
    let chained = ShiftGraph::from_edges(2, &[(0, 0), (0, 1), (1, 1)]).unwrap();
    assert_eq!(chained.classify(), CardinalityClass::CountablyInfinite);
}

fn contributions(rng: &mut ChaCha8Rng, m: usize, g: &FiniteGroup) -> Vec<ElemSet> {
    let elems: Vec<_> = g.elems().collect();
    (0..m)
        .map(|_| {
            let k = rng.gen_range(0..=2);
            (0..k).map(|_| elems[rng.gen_range(0..elems.len())]).collect()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn prune_is_idempotent_and_keeps_class(seed in any::<u64>(), n in 1usize..=7, m in 0usize..=12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, n, m);
        let p = g.prune();
        prop_assert_eq!(&p.prune(), &p);
        prop_assert_eq!(p.classify(), g.classify());
        prop_assert_eq!(g.classify(), oracle_classify(&g));
        for r in 1..=5 {
            prop_assert_eq!(periodic(&p, r), periodic(&g, r));
        }
    }

    #[test]
    fn blocks_preserve_class_and_counts(seed in any::<u64>(), n in 1usize..=5, m in 0usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, n, m);
        check_block_invariance(&g);
        check_finite_counts(&g);
    }

    #[test]
    fn closed_walks_match(seed in any::<u64>(), n in 1usize..=8, m in 0usize..=12, r in 1usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, n, m);
        prop_assert_eq!(periodic(&g, r), BigUint::from(oracle_closed_walks(&g, r)));
    }

    #[test]
    fn images_match(seed in any::<u64>(), n in 1usize..=5, m in 0usize..=9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let group = FiniteGroup::from_name("S3").unwrap();
        let g = random_graph(&mut rng, n, m);
        let contrib = contributions(&mut rng, m, &group);
        let got: Vec<ElemSet> = g.realizable_images(&contrib, &group);
        let want: Vec<ElemSet> = oracle_images(&g, &contrib, &group).into_iter().collect();
        let mut got_sorted = got.clone();
        got_sorted.sort();
        prop_assert_eq!(got_sorted, want);
    }
}
