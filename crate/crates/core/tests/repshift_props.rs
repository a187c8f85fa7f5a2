mod common;

use std::collections::BTreeSet;

use common::*;
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use repshift_core::fingroup::{Elem, FiniteGroup};
use repshift_core::repshift::{build_shift_graph, BuildOptions, PeriodicRep, RepGraph};
use repshift_core::shiftgraph::CardinalityClass;
use repshift_core::zgroup::{parse_presentation, Presentation};

fn graph(p: &Presentation, g: &FiniteGroup) -> RepGraph {
    build_shift_graph(p, g, &BuildOptions::default()).unwrap()
}

fn lcm(a: usize, b: usize) -> usize {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

/// Every rotation of every periodic orbit up to `max_period`.
fn periodic_points(rg: &RepGraph, max_period: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for c in rg.periodic_orbits(max_period, 100_000).unwrap() {
        for k in 0..c.len() {
            let mut rot = c.clone();
            rot.rotate_left(k);
            out.push(rot);
        }
    }
    out
}

#[test]
fn finite_shifts_list_every_representation() {
    let mut seen = 0;
    for name in PRESENTATION_FIXTURES {
        let p = fixture(name);
        if matches!(p, Presentation::Hnn(_)) {
            continue;
        }
        for target in ["Z2", "Z3", "Z4", "S3"] {
            let g = FiniteGroup::from_name(target).unwrap();
            let rg = graph(&p, &g);
            let CardinalityClass::Finite(n) = rg.classify() else { continue };
            seen += 1;
            let cycles = simple_cycles(&rg.graph);
            let period = cycles.iter().map(Vec::len).fold(1, lcm);
            let mut reps = BTreeSet::new();
            for c in &cycles {
                for k in 0..c.len() {
                    let mut rot = c.clone();
                    rot.rotate_left(k);
                    let rep = PeriodicRep::from_cycle(&rg, &rot).unwrap();
                    // Revalidate against the presentation itself.
                    PeriodicRep::new(&p, &g, rep.values().to_vec()).unwrap();
                    reps.insert((0..period).map(|j| rep.values()[j % rot.len()].clone()).collect::<Vec<_>>());
                }
            }
            assert_eq!(reps.len() as u64, n, "{name} into {target}");
            assert_eq!(oracle_periodic_reps(&p, &g, period), n, "{name} into {target}");
        }
    }
    assert!(seen >= 3);
}

#[test]
fn fixture_periodic_counts() {
    for name in ["ex2_1.zg", "ex4_4a.zg", "ex4_4b.zg", "ex4_4c.zg"] {
        let p = fixture(name);
        for target in ["Z2", "Z3", "S3"] {
            let g = FiniteGroup::from_name(target).unwrap();
            let rg = graph(&p, &g);
            for r in 1..=4 {
                let want = BigUint::from(oracle_periodic_reps(&p, &g, r));
                assert_eq!(rg.graph.count_periodic_points(r).unwrap(), want, "{name} {target} r={r}");
            }
        }
    }
}

#[test]
fn shift_acts_by_rotation() {
    let g = FiniteGroup::from_name("S3").unwrap();
    for name in ["ex2_1.zg", "ex4_4a.zg", "ex4_4c.zg"] {
        let rg = graph(&fixture(name), &g);
        for c in periodic_points(&rg, 4) {
            let rep = PeriodicRep::from_cycle(&rg, &c).unwrap();
            let mut rot = c.clone();
            rot.rotate_left(1);
            let shifted = PeriodicRep::from_cycle(&rg, &rot).unwrap();
            assert_eq!(shifted, rep.shifted());
            for j in -5..5 {
                assert_eq!(shifted.value(0, j), rep.value(0, j + 1));
            }
            assert_eq!(rep.reduced().least_period(), rep.least_period());
            assert_eq!(rep.image(&g), shifted.image(&g));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_periodic_counts(seed in any::<u64>(), fams in 1usize..=2, k in 1usize..=2, which in 0usize..3) {
        prop_assume!(fams * k <= 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = parse_presentation(&random_presentation_text(&mut rng, fams, k)).unwrap();
        let g = FiniteGroup::from_name(["Z2", "Z3", "S3"][which]).unwrap();
        let rg = graph(&p, &g);
        for r in 1..=3 {
            let want = BigUint::from(oracle_periodic_reps(&p, &g, r));
            prop_assert_eq!(rg.graph.count_periodic_points(r).unwrap(), want);
        }
    }

    #[test]
    fn abelian_targets_multiply_pointwise(seed in any::<u64>(), fams in 1usize..=2, which in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = parse_presentation(&random_presentation_text(&mut rng, fams, 1)).unwrap();
        let g = FiniteGroup::from_name(["Z2", "Z3", "Z4", "V4"][which]).unwrap();
        let rg = graph(&p, &g);
        let reps: Vec<PeriodicRep> = periodic_points(&rg, 4)
            .iter()
            .take(40)
            .map(|c| PeriodicRep::from_cycle(&rg, c).unwrap())
            .collect();
        for a in &reps {
            for b in &reps {
                let q = lcm(a.period(), b.period());
                let values: Vec<Vec<Elem>> = (0..q as i64)
                    .map(|j| (0..fams).map(|f| g.mul(a.value(f, j), b.value(f, j))).collect())
                    .collect();
                prop_assert!(PeriodicRep::new(&p, &g, values).is_ok());
            }
        }
    }
}
