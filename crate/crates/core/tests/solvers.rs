//! End-to-end solver behavior: reproducibility, re-scoring and stop rules.

use std::collections::HashSet;
use std::sync::atomic::AtomicBool;
use std::sync::Arc;
use std::time::Duration;

use skewmf::solvers::{
    saw_search, saw_search_with, shc_search, shc_search_with, RunControl, SawConfig, SawWalk,
    ShcConfig,
};
use skewmf::{is_skew_symmetric, sidelobes_naive, SkewSymmetricSequence};

#[test]
fn fixed_seed_reproduces_records() {
    for n in [11, 51, 101] {
        let cfg = ShcConfig::for_length(n, 9).with_steps(1500);
        assert!(shc_search(n, &cfg).unwrap().same_outcome(&shc_search(n, &cfg).unwrap()));
        let cfg = SawConfig::new(200, 3, 9);
        assert!(saw_search(n, &cfg).unwrap().same_outcome(&saw_search(n, &cfg).unwrap()));
    }
}

#[test]
fn different_seeds_diverge() {
    let a = shc_search(101, &ShcConfig::for_length(101, 1).with_steps(500)).unwrap();
    let b = shc_search(101, &ShcConfig::for_length(101, 2).with_steps(500)).unwrap();
    assert_ne!(a.best_half_hex, b.best_half_hex);
}

#[test]
fn best_sequences_rescore() {
    for seed in 0..4 {
        let shc = shc_search(75, &ShcConfig::for_length(75, seed).with_steps(2000)).unwrap();
        let saw = saw_search(75, &SawConfig::new(300, 3, seed)).unwrap();
        for r in [shc, saw] {
            let best = r.best_sequence().unwrap();
            assert_eq!(best.len(), 75);
            assert!(is_skew_symmetric(best.as_slice()));
            assert_eq!(sidelobes_naive(best.as_slice()).energy(), r.best_energy);
            assert_eq!(r.best_mf, 75.0 * 75.0 / (2.0 * r.best_energy as f64));
        }
    }
}

#[test]
fn saw_walk_never_repeats() {
    for seed in 0..5 {
        let cfg = SawConfig::new(5000, 1, seed);
        let start = SkewSymmetricSequence::random(25, seed).unwrap();
        let mut walk = SawWalk::start(start, &cfg);
        let mut trace = HashSet::new();
        while walk.steps() < 5000 {
            match walk.step() {
                Some((_, h)) => assert!(trace.insert(h), "seed {seed}: repeated state"),
                None => break,
            }
        }
        assert_eq!(walk.visited().len(), trace.len() + 1);
    }
}

#[test]
fn improvement_traces_decrease() {
    let control = RunControl::default();
    let mut trace = Vec::new();
    let r = shc_search_with(
        201,
        &ShcConfig::for_length(201, 5).with_steps(5000),
        &control,
        &mut |i| trace.push((i.energy, i.step)),
    )
    .unwrap();
    assert!(trace.windows(2).all(|w| w[1].0 < w[0].0 && w[1].1 >= w[0].1));
    assert_eq!(trace.last().unwrap().0, r.best_energy);

    let mut trace = Vec::new();
    saw_search_with(201, &SawConfig::new(800, 5, 5), &control, &mut |i| trace.push(i.energy))
        .unwrap();
    assert!(trace.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn stop_flag_and_deadline_end_runs() {
    let stop = Arc::new(AtomicBool::new(true));
    let control = RunControl {
        deadline: None,
        stop: Some(stop),
    };
    let r = shc_search_with(501, &ShcConfig::for_length(501, 1), &control, &mut |_| {}).unwrap();
    assert_eq!(r.steps, 0);

    let control = RunControl::with_time_limit(Duration::from_millis(100));
    let r = saw_search_with(301, &SawConfig::new(600, u64::MAX, 1), &control, &mut |_| {})
        .unwrap();
    assert!(r.wall_time < 5.0);
    assert!(r.best_sequence().is_ok());
}

#[test]
fn target_stops_early() {
    let r = shc_search(
        101,
        &ShcConfig::for_length(101, 3).with_steps(1_000_000).with_target(3.0),
    )
    .unwrap();
    assert!(r.best_mf >= 3.0);
    assert!(r.steps < 1_000_000);
    assert_eq!(r.target_met(), Some(true));

    let r = saw_search(101, &SawConfig::new(400, 1000, 3).with_target(3.0)).unwrap();
    assert_eq!(r.target_met(), Some(true));
}

#[test]
fn record_only_mode_runs() {
    let cfg = ShcConfig::for_length(101, 8).with_steps(3000).record_only();
    let r = shc_search(101, &cfg).unwrap();
    assert!(!cfg.accept_current_improving);
    assert_eq!(sidelobes_naive(r.best_sequence().unwrap().as_slice()).energy(), r.best_energy);
}
