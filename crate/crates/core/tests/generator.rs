mod common;

use std::collections::{BTreeMap, BTreeSet, HashSet};

use common::*;
use hyperff_core::generator::{
    burning_on, geometric_sample, hyperff, hyperff_with_ties, null_model, GeneratorError, HyperFFParams,
    TieStrengthStore,
};
use hyperff_core::patterns::edge_size_distribution;
use proptest::prelude::*;

/// Node sets reachable from `source` through shared hyperedges.
fn component_of(g: &hyperff_core::Hypergraph, source: u32) -> HashSet<u32> {
    let sets = member_sets(g);
    let mut seen = HashSet::from([source]);
    let mut frontier = vec![source];
    while let Some(v) = frontier.pop() {
        for set in sets.iter().filter(|s| s.contains(&v)) {
            for &w in set {
                if seen.insert(w) {
                    frontier.push(w);
                }
            }
        }
    }
    seen
}

#[test]
fn geometric_means_match_monte_carlo() {
    let mut r = rng(1);
    for (p, mean, tol) in [(0.5, 1.0, 0.01), (0.75, 3.0, 0.03)] {
        let n = 1_000_000;
        let sum: usize = (0..n).map(|_| geometric_sample(p, &mut r).unwrap()).sum();
        let got = sum as f64 / n as f64;
        assert!((got - mean).abs() < tol, "p={p}: mean {got}");
    }
    assert!(matches!(geometric_sample(1.0, &mut r), Err(GeneratorError::InvalidProbability(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn burning_stays_in_source_component(seed in any::<u64>(), p in 0.0f64..0.95) {
        let g = random_hypergraph(seed, 20, 30);
        let mut r = rng(seed ^ 0xabc);
        let source = (seed % g.num_nodes() as u64) as u32;
        let burned = burning_on(source, p, &g, &TieStrengthStore::new(), &mut r).unwrap().burned;
        prop_assert_eq!(burned[0], source);
        let unique: HashSet<u32> = burned.iter().copied().collect();
        prop_assert_eq!(unique.len(), burned.len());
        let comp = component_of(&g, source);
        prop_assert!(unique.is_subset(&comp));
    }

    #[test]
    fn hyperff_structural_contract(seed in any::<u64>(), nodes in 1usize..120, p in 0.0f64..0.8, q in 0.0f64..0.8) {
        let out = hyperff_with_ties(&HyperFFParams::new(p, q, nodes, seed)).unwrap();
        let records = out.sequence.records();
        let mut per_step: BTreeMap<i64, usize> = BTreeMap::new();
        for rec in records {
            let t = rec.timestamp();
            prop_assert!(t >= 1 && (t as usize) < nodes);
            prop_assert!(rec.contains(t as u32));
            prop_assert!(rec.len() >= 2);
            prop_assert!(rec.members().iter().all(|&v| (v as i64) <= t));
            *per_step.entry(t).or_default() += 1;
        }
        // every arriving node emits at least one hyperedge
        prop_assert_eq!(per_step.len(), nodes.saturating_sub(1));
        // ties only link an arrival to an older node, once per first-fire burn
        let mut tie_total = BTreeMap::<i64, u32>::new();
        for ((a, b), s) in out.ties.iter() {
            prop_assert!(a != b && s >= 1);
            *tie_total.entry(a.max(b) as i64).or_default() += s;
        }
        for (t, count) in &per_step {
            prop_assert_eq!(tie_total.get(t).copied().unwrap_or(0) as usize, *count);
        }
    }

    #[test]
    fn null_model_contract(seed in any::<u64>()) {
        let seq = random_sequence(seed, 40, 25);
        let null = null_model(&seq, seed.wrapping_add(1)).unwrap();
        prop_assert_eq!(null.len(), seq.len());
        for (a, b) in seq.records().iter().zip(null.records()) {
            prop_assert_eq!(a.timestamp(), b.timestamp());
            prop_assert_eq!(a.len(), b.len());
        }
        // members are drawn from nodes seen up to each record's timestamp
        let mut seen = BTreeSet::new();
        let recs = seq.records();
        let mut i = 0;
        while i < recs.len() {
            let t = recs[i].timestamp();
            let j = i + recs[i..].iter().take_while(|r| r.timestamp() == t).count();
            for r in &recs[i..j] {
                seen.extend(r.members().iter().copied());
            }
            for r in &null.records()[i..j] {
                prop_assert!(r.members().iter().all(|v| seen.contains(v)));
            }
            i = j;
        }
        prop_assert_eq!(edge_size_distribution(&seq.build()), edge_size_distribution(&null.build()));
    }
}

#[test]
fn hyperff_is_deterministic() {
    let params = HyperFFParams::new(0.51, 0.2, 2_000, 99);
    assert_eq!(hyperff(&params).unwrap(), hyperff(&params).unwrap());
    assert_ne!(hyperff(&params).unwrap(), hyperff(&HyperFFParams::new(0.51, 0.2, 2_000, 100)).unwrap());
}

#[test]
fn no_spread_yields_three_pairs() {
    let seq = hyperff(&HyperFFParams::new(0.0, 0.0, 4, 3)).unwrap();
    assert_eq!(seq.len(), 3);
    assert!(seq.records().iter().all(|r| r.len() == 2));
}

#[test]
fn invalid_params_rejected() {
    for (p, q, t) in [(1.0, 0.2, 10), (0.5, -0.1, 10), (0.5, 0.2, 0), (f64::NAN, 0.2, 10)] {
        assert!(hyperff(&HyperFFParams::new(p, q, t, 0)).is_err(), "({p}, {q}, {t})");
    }
}

#[test]
fn null_model_of_generated_output_keeps_histogram() {
    let seq = hyperff(&HyperFFParams::new(0.51, 0.2, 1_000, 4)).unwrap();
    let null = null_model(&seq, 5).unwrap();
    assert_eq!(edge_size_distribution(&seq.build()), edge_size_distribution(&null.build()));
    assert_ne!(seq, null);
}
