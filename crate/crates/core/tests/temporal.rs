mod common;

use common::*;
use hyperff_core::generator::{hyperff, HyperFFParams};
use hyperff_core::patterns::{effective_diameter, intersection_stats, DiameterConfig};
use hyperff_core::temporal::{evolve, loglog_slope, make_schedule, make_time_schedule, SnapshotSchedule};
use proptest::prelude::*;
use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn slope_is_scale_equivariant(
        a in 0.2f64..3.0,
        cx in 0.01f64..100.0,
        cy in 0.01f64..100.0,
        xs in proptest::collection::vec(1.0f64..1e4, 3..20),
    ) {
        prop_assume!(xs.iter().any(|&x| (x / xs[0] - 1.0).abs() > 1e-3));
        let ys: Vec<f64> = xs.iter().map(|x| x.powf(a)).collect();
        let base = loglog_slope(&xs, &ys).unwrap();
        prop_assert!((base.slope - a).abs() < 1e-8);
        let sx: Vec<f64> = xs.iter().map(|x| x * cx).collect();
        let sy: Vec<f64> = ys.iter().map(|y| y * cy).collect();
        let scaled = loglog_slope(&sx, &sy).unwrap();
        prop_assert!((scaled.slope - base.slope).abs() < 1e-8);
        prop_assert!((scaled.intercept - (base.intercept + cy.ln() - a * cx.ln())).abs() < 1e-6);
    }

    #[test]
    fn incremental_counts_match_snapshots(seed in any::<u64>(), m in 2usize..8) {
        let seq = random_sequence(seed, 40, 25);
        prop_assume!(seq.len() >= 2);
        let schedule = make_schedule(seq.len(), m).unwrap();
        let config = DiameterConfig::default();
        let series = evolve(&seq, &schedule, Some(&config)).unwrap();
        prop_assert_eq!(series.rows.len(), schedule.len());
        let mut last = (0, 0);
        for row in &series.rows {
            let g = seq.prefix_snapshot(row.k).unwrap();
            let stats = intersection_stats(&g);
            prop_assert_eq!(row.num_edges, row.k);
            prop_assert_eq!(row.num_nodes, g.active_nodes());
            prop_assert_eq!(row.intersecting_pairs, stats.intersecting_pairs);
            prop_assert_eq!(row.possible_pairs, stats.possible_pairs);
            prop_assert_eq!(
                row.effective_diameter.as_ref().map(|d| d.value),
                effective_diameter(&g, &config).ok().map(|d| d.value)
            );
            prop_assert!(row.num_nodes >= last.0 && row.num_edges > last.1);
            last = (row.num_nodes, row.num_edges);
        }
    }

    #[test]
    fn time_schedule_is_a_valid_schedule(seed in any::<u64>(), m in 2usize..10) {
        let seq = random_sequence(seed, 40, 25);
        prop_assume!(seq.len() >= 2);
        let schedule = make_time_schedule(&seq, m).unwrap();
        let ks = schedule.checkpoints();
        prop_assert_eq!(*ks.last().unwrap(), seq.len());
        prop_assert!(ks.windows(2).all(|w| w[0] < w[1]));
        // every checkpoint ends a timestamp group
        for &k in ks {
            prop_assert!(k == seq.len() || seq.records()[k].timestamp() > seq.records()[k - 1].timestamp());
        }
    }
}

#[test]
fn noisy_power_law_slope() {
    let mut r = rng(4);
    let xs: Vec<f64> = (0..200).map(|i| 10f64.powf(1.0 + 3.0 * i as f64 / 199.0)).collect();
    let ys: Vec<f64> = xs.iter().map(|x| x.powf(1.3) * (0.2 * (r.random::<f64>() - 0.5)).exp()).collect();
    let fit = loglog_slope(&xs, &ys).unwrap();
    assert!((fit.slope - 1.3).abs() < 0.05, "{}", fit.slope);
    assert!(fit.r_squared > 0.99);
}

#[test]
fn shrinking_interaction_slope_means_falling_density() {
    let seq = hyperff(&HyperFFParams::new(0.51, 0.2, 2_000, 8)).unwrap();
    let series = evolve(&seq, &make_schedule(seq.len(), 25).unwrap(), None).unwrap();
    let t1 = series.interaction_slope().unwrap();
    let densification = series.densification_slope().unwrap();
    assert!(densification.fit.slope > 1.0, "{}", densification.fit.slope);
    assert!(t1.fit.slope < 1.0, "{}", t1.fit.slope);
    // ln DoI = ln pairs − ln possible, so its slope is exactly the T1 slope minus one
    let kept: Vec<_> = series.rows.iter().enumerate().filter(|(i, _)| !t1.excluded.contains(i)).map(|(_, r)| r).collect();
    let possible: Vec<f64> = kept.iter().map(|r| r.possible_pairs as f64).collect();
    let doi: Vec<f64> = kept.iter().map(|r| r.density_of_interactions().unwrap()).collect();
    let doi_fit = loglog_slope(&possible, &doi).unwrap();
    assert!((doi_fit.slope - (t1.fit.slope - 1.0)).abs() < 1e-9);
    assert!(doi.last().unwrap() < doi.first().unwrap());
}

#[test]
fn schedule_rejects_checkpoints_past_the_end() {
    let seq = random_sequence(3, 10, 10);
    let bad = SnapshotSchedule::new(vec![1, seq.len() + 1], seq.len() + 1).unwrap();
    assert!(evolve(&seq, &bad, None).is_err());
}
