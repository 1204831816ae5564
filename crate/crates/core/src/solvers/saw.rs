//! Self-avoiding walk: steepest move to an unvisited neighbor, with restarts.

use std::collections::HashSet;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{check_length, target_reached, Improvement, RunControl, RunRecord, SolverConfig};
use crate::error::{Error, Result};
use crate::incremental::{FlipIndex, FlipState};
use crate::seqcore::SkewSymmetricSequence;

pub const DEFAULT_HASH_P: u64 = 315_223;
pub const DEFAULT_HASH_Q: u64 = 99_041;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SawConfig {
    /// Flips per walk before the walk is restarted.
    pub inner_threshold: u64,
    /// Number of walks.
    pub outer_threshold: u64,
    pub hash_p: u64,
    pub hash_q: u64,
    pub seed: u64,
    #[serde(default)]
    pub target_mf: Option<f64>,
}

impl SawConfig {
    pub fn new(inner_threshold: u64, outer_threshold: u64, seed: u64) -> Self {
        Self {
            inner_threshold,
            outer_threshold,
            hash_p: DEFAULT_HASH_P,
            hash_q: DEFAULT_HASH_Q,
            seed,
            target_mf: None,
        }
    }

    pub fn with_target(mut self, target_mf: f64) -> Self {
        self.target_mf = Some(target_mf);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.inner_threshold == 0 || self.outer_threshold == 0 {
            return Err(Error::InvalidConfig("thresholds must be at least 1".into()));
        }
        for p in [self.hash_p, self.hash_q] {
            if p % 2 == 0 || !is_prime(p) {
                return Err(Error::InvalidConfig(format!("{p} is not an odd prime")));
            }
        }
        if self.hash_p == self.hash_q {
            return Err(Error::InvalidConfig("hash primes must differ".into()));
        }
        Ok(())
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Fingerprints of the states visited by the current walk.
#[derive(Clone, Debug, Default)]
pub struct VisitedSet {
    fingerprints: HashSet<u64>,
}

impl VisitedSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(cap: usize) -> Self {
        Self {
            fingerprints: HashSet::with_capacity(cap),
        }
    }

    /// Returns false if the fingerprint was already present.
    pub fn insert(&mut self, fingerprint: u64) -> bool {
        self.fingerprints.insert(fingerprint)
    }

    pub fn contains(&self, fingerprint: u64) -> bool {
        self.fingerprints.contains(&fingerprint)
    }

    pub fn len(&self) -> usize {
        self.fingerprints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fingerprints.is_empty()
    }

    pub fn clear(&mut self) {
        self.fingerprints.clear();
    }
}

/// Polynomial hash over indices `0..=l` in wrapping 64-bit arithmetic,
/// starting from `hash_p` and multiplying by `hash_q` per element. With
/// `flip_at = Some(q)` the element at `q` is negated, which fingerprints the
/// `q`-neighbor without building it.
pub fn hash_candidate(
    seq: &SkewSymmetricSequence,
    flip_at: Option<FlipIndex>,
    cfg: &SawConfig,
) -> u64 {
    let flip = flip_at.map(FlipIndex::get);
    seq.half()
        .iter()
        .enumerate()
        .fold(cfg.hash_p, |h, (i, &b)| {
            let v = if flip == Some(i) { -b } else { b };
            h.wrapping_mul(cfg.hash_q).wrapping_add(v as i64 as u64)
        })
}

/// Lowest-delta unvisited neighbor, last index winning ties. Returns `None`
/// when every neighbor has been visited. The chosen move may increase the
/// energy.
pub fn pick_best_neighbor(
    state: &FlipState,
    visited: &VisitedSet,
    cfg: &SawConfig,
) -> Option<FlipIndex> {
    let mut best = None;
    let mut best_delta = i64::MAX;
    for q in 0..state.half_len() {
        let q = FlipIndex::new_unchecked(q);
        let delta = state.derivative(q);
        if delta <= best_delta {
            if visited.contains(hash_candidate(state.sequence(), Some(q), cfg)) {
                continue;
            }
            best_delta = delta;
            best = Some(q);
        }
    }
    best
}

/// One walk: the current state and the fingerprints it has visited.
#[derive(Debug)]
pub struct SawWalk<'c> {
    cfg: &'c SawConfig,
    state: FlipState,
    visited: VisitedSet,
    steps: u64,
}

impl<'c> SawWalk<'c> {
    pub fn start(seq: SkewSymmetricSequence, cfg: &'c SawConfig) -> Self {
        let cap = cfg.inner_threshold.saturating_add(1).min(1 << 20) as usize;
        let mut walk = Self {
            cfg,
            state: FlipState::new(seq),
            visited: VisitedSet::with_capacity(cap),
            steps: 0,
        };
        walk.visited
            .insert(hash_candidate(walk.state.sequence(), None, cfg));
        walk
    }

    /// Clears the visited set and starts over from `seq`, reusing buffers.
    pub fn restart(&mut self, seq: SkewSymmetricSequence) {
        self.state = FlipState::new(seq);
        self.visited.clear();
        self.visited
            .insert(hash_candidate(self.state.sequence(), None, self.cfg));
        self.steps = 0;
    }

    /// Moves to the best unvisited neighbor and records its fingerprint.
    pub fn step(&mut self) -> Option<(FlipIndex, u64)> {
        let q = pick_best_neighbor(&self.state, &self.visited, self.cfg)?;
        self.state.flip(q);
        let h = hash_candidate(self.state.sequence(), None, self.cfg);
        self.visited.insert(h);
        self.steps += 1;
        Some((q, h))
    }

    pub fn state(&self) -> &FlipState {
        &self.state
    }

    pub fn visited(&self) -> &VisitedSet {
        &self.visited
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }
}

pub fn saw_search(n: usize, cfg: &SawConfig) -> Result<RunRecord> {
    saw_search_with(n, cfg, &RunControl::default(), &mut |_| {})
}

/// Restarted self-avoiding walks. Each walk starts from a fresh random
/// sequence and ends after `inner_threshold` flips or when its neighborhood
/// is exhausted; the search ends after `outer_threshold` walks, on reaching
/// `target_mf`, or when `control` says stop.
pub fn saw_search_with(
    n: usize,
    cfg: &SawConfig,
    control: &RunControl,
    on_improve: &mut dyn FnMut(&Improvement),
) -> Result<RunRecord> {
    check_length(n)?;
    cfg.validate()?;
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let l = n / 2;

    let mut walk = SawWalk::start(SkewSymmetricSequence::random_with(l, &mut rng)?, cfg);
    let mut best_energy = walk.state().energy();
    let mut best = walk.state().sequence().clone();
    let mut total_steps = 0u64;
    let mut walks = 0u64;

    let mut improve = |state: &FlipState, step: u64, best: &mut SkewSymmetricSequence| {
        on_improve(&Improvement {
            energy: state.energy(),
            merit_factor: state.merit_factor(),
            step,
            elapsed: started.elapsed(),
        });
        *best = state.sequence().clone();
    };
    improve(walk.state(), 0, &mut best);

    'outer: loop {
        if target_reached(cfg.target_mf, crate::seqcore::merit_factor(n, best_energy)) {
            break;
        }
        while walk.steps() < cfg.inner_threshold {
            if control.should_stop() {
                break 'outer;
            }
            if walk.step().is_none() {
                break;
            }
            total_steps += 1;
            let e = walk.state().energy();
            if e < best_energy {
                best_energy = e;
                improve(walk.state(), total_steps, &mut best);
                if target_reached(cfg.target_mf, walk.state().merit_factor()) {
                    break 'outer;
                }
            }
        }
        walks += 1;
        if walks >= cfg.outer_threshold || control.should_stop() {
            break;
        }
        walk.restart(SkewSymmetricSequence::random_with(l, &mut rng)?);
        let e = walk.state().energy();
        if e < best_energy {
            best_energy = e;
            improve(walk.state(), total_steps, &mut best);
        }
    }

    Ok(RunRecord::new(
        SolverConfig::Saw(cfg.clone()),
        &best,
        best_energy,
        started,
        total_steps,
        0,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqcore::sidelobes_naive;

    fn small_state() -> FlipState {
        FlipState::new(SkewSymmetricSequence::from_elements(vec![1, 1, 1, -1, 1]).unwrap())
    }

    #[test]
    fn hash_first_step() {
        let cfg = SawConfig::new(1, 1, 0);
        // A one-element prefix isolates the first accumulator step.
        let seq = SkewSymmetricSequence::from_half(&[1, 1, 1]).unwrap();
        let after_first = DEFAULT_HASH_P
            .wrapping_mul(DEFAULT_HASH_Q)
            .wrapping_sub(1);
        assert_eq!(after_first, 31_220_001_142);
        let full = [1i64, 1]
            .iter()
            .fold(after_first, |h, &b| {
                h.wrapping_mul(DEFAULT_HASH_Q).wrapping_add(b as u64)
            });
        assert_eq!(
            hash_candidate(&seq, Some(FlipIndex::new_unchecked(0)), &cfg),
            full
        );
    }

    #[test]
    fn neighbor_hash_matches_materialized() {
        let cfg = SawConfig::new(1, 1, 0);
        let seq = SkewSymmetricSequence::random(30, 9).unwrap();
        for q in 0..30 {
            let mut st = FlipState::new(seq.clone());
            st.flip(FlipIndex::new_unchecked(q));
            assert_eq!(
                hash_candidate(&seq, Some(FlipIndex::new_unchecked(q)), &cfg),
                hash_candidate(st.sequence(), None, &cfg)
            );
        }
    }

    #[test]
    fn pick_best_examples() {
        let cfg = SawConfig::new(10, 1, 0);
        let st = small_state();
        let seq = st.sequence();
        let mut visited = VisitedSet::new();
        assert_eq!(
            pick_best_neighbor(&st, &visited, &cfg),
            Some(FlipIndex::new_unchecked(1))
        );

        visited.insert(hash_candidate(seq, Some(FlipIndex::new_unchecked(1)), &cfg));
        assert_eq!(
            pick_best_neighbor(&st, &visited, &cfg),
            Some(FlipIndex::new_unchecked(0))
        );

        visited.insert(hash_candidate(seq, Some(FlipIndex::new_unchecked(0)), &cfg));
        assert_eq!(pick_best_neighbor(&st, &visited, &cfg), None);
    }

    #[test]
    fn ties_go_to_last_index() {
        let cfg = SawConfig::new(10, 1, 0);
        for seed in 0..50 {
            let st = FlipState::new(SkewSymmetricSequence::random(12, seed).unwrap());
            let deltas: Vec<i64> = (0..12)
                .map(|q| st.derivative(FlipIndex::new_unchecked(q)))
                .collect();
            let min = *deltas.iter().min().unwrap();
            let last = deltas.iter().rposition(|&d| d == min).unwrap();
            assert_eq!(
                pick_best_neighbor(&st, &VisitedSet::new(), &cfg).unwrap().get(),
                last
            );
        }
    }

    #[test]
    fn walk_fingerprints_are_unique() {
        let cfg = SawConfig::new(200, 1, 0);
        let mut walk = SawWalk::start(SkewSymmetricSequence::random(15, 4).unwrap(), &cfg);
        let mut seen = HashSet::new();
        seen.insert(hash_candidate(walk.state().sequence(), None, &cfg));
        while walk.steps() < cfg.inner_threshold {
            let Some((_, h)) = walk.step() else { break };
            assert!(seen.insert(h), "revisited a state");
        }
        assert!(walk.visited().len() as u64 <= cfg.inner_threshold + 1);
        assert_eq!(
            walk.state().sidelobes(),
            &sidelobes_naive(walk.state().sequence().as_slice())
        );
    }

    #[test]
    fn config_validation() {
        assert!(SawConfig::new(1, 1, 0).validate().is_ok());
        assert!(SawConfig::new(0, 1, 0).validate().is_err());
        let mut c = SawConfig::new(1, 1, 0);
        c.hash_q = c.hash_p;
        assert!(c.validate().is_err());
        c.hash_q = 99_042;
        assert!(c.validate().is_err());
        c.hash_q = 2;
        assert!(c.validate().is_err());
    }

    #[test]
    fn tiny_lengths() {
        let r = saw_search(3, &SawConfig::new(10, 3, 1)).unwrap();
        assert_eq!(r.best_mf, 4.5);
        let r = saw_search(5, &SawConfig::new(100, 2, 1)).unwrap();
        assert_eq!(r.best_energy, 2);
        assert_eq!(r.best_mf, 6.25);
        assert!(matches!(
            saw_search(4, &SawConfig::new(1, 1, 1)),
            Err(Error::EvenLength(4))
        ));
    }

    #[test]
    fn barker_13_found() {
        let r = saw_search(13, &SawConfig::new(200, 20, 1)).unwrap();
        assert_eq!(r.best_energy, 6);
        assert_eq!(
            crate::seqcore::exact_merit_factor(13, r.best_energy),
            num_rational::Ratio::new(169, 12)
        );
    }
}
