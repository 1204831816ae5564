//! Lightweight stochastic hill climbing with quakes.
//!
//! A scan visits every flip position once, starting from a random rotation,
//! and takes the first flip that improves the energy (by default relative to
//! the current state, optionally only flips that beat the record). When a
//! full scan takes nothing, the state is shaken by flipping
//! `quake_size` random positions and scanning resumes. There is no visited
//! set: the extra memory beyond the state is constant.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{
    check_length, quake_schedule, target_reached, Improvement, RunControl, RunRecord,
    SolverConfig,
};
use crate::error::{Error, Result};
use crate::incremental::{FlipIndex, FlipState};
use crate::seqcore::SkewSymmetricSequence;

/// Positions scanned between two stop checks.
const CONTROL_STRIDE: usize = 256;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShcConfig {
    /// Iteration budget; `None` runs until the target or the run control stops it.
    pub step_threshold: Option<u64>,
    pub quake_size: u32,
    pub seed: u64,
    #[serde(default)]
    pub target_mf: Option<f64>,
    /// When true (the default), any flip that lowers the current energy is
    /// taken. When false, a flip is taken only if the resulting energy beats
    /// the best seen so far; after a quake that rule rarely fires, so the
    /// search drifts through chained quakes instead of descending.
    #[serde(default = "default_true")]
    pub accept_current_improving: bool,
}

impl ShcConfig {
    /// Unbounded run with the quake size from [`quake_schedule`].
    pub fn for_length(n: usize, seed: u64) -> Self {
        Self {
            step_threshold: None,
            quake_size: quake_schedule(n),
            seed,
            target_mf: None,
            accept_current_improving: true,
        }
    }

    /// Only accept flips that beat the record.
    pub fn record_only(mut self) -> Self {
        self.accept_current_improving = false;
        self
    }

    pub fn with_steps(mut self, steps: u64) -> Self {
        self.step_threshold = Some(steps);
        self
    }

    pub fn with_target(mut self, target_mf: f64) -> Self {
        self.target_mf = Some(target_mf);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.quake_size == 0 {
            return Err(Error::InvalidConfig("quake size must be at least 1".into()));
        }
        if self.step_threshold == Some(0) {
            return Err(Error::InvalidConfig("step threshold must be at least 1".into()));
        }
        Ok(())
    }
}

fn default_true() -> bool {
    true
}

/// Flips `count` positions drawn uniformly from `0..l` with replacement.
/// Returns the total energy change.
pub fn quake<R: Rng + ?Sized>(count: u32, state: &mut FlipState, rng: &mut R) -> i64 {
    let l = state.half_len();
    let mut delta = 0;
    for _ in 0..count {
        delta += state.flip(FlipIndex::new_unchecked(rng.gen_range(0..l)));
    }
    delta
}

/// Quake at the given positions.
pub fn quake_at(state: &mut FlipState, positions: impl IntoIterator<Item = FlipIndex>) -> i64 {
    positions.into_iter().map(|q| state.flip(q)).sum()
}

pub fn shc_search(n: usize, cfg: &ShcConfig) -> Result<RunRecord> {
    shc_search_with(n, cfg, &RunControl::default(), &mut |_| {})
}

pub fn shc_search_with(
    n: usize,
    cfg: &ShcConfig,
    control: &RunControl,
    on_improve: &mut dyn FnMut(&Improvement),
) -> Result<RunRecord> {
    check_length(n)?;
    cfg.validate()?;
    if cfg.step_threshold.is_none() && cfg.target_mf.is_none() && control.deadline.is_none() && control.stop.is_none() {
        return Err(Error::InvalidConfig(
            "unbounded run needs a step threshold, a target or a run control".into(),
        ));
    }
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let l = n / 2;
    let limit = cfg.step_threshold.unwrap_or(u64::MAX);

    let mut state = FlipState::new(SkewSymmetricSequence::random_with(l, &mut rng)?);
    let mut best_energy = state.energy();
    let mut best = state.sequence().clone();
    let mut report = |state: &FlipState, step: u64| {
        on_improve(&Improvement {
            energy: state.energy(),
            merit_factor: state.merit_factor(),
            step,
            elapsed: started.elapsed(),
        })
    };
    report(&state, 0);

    let mut greedy = true;
    let mut steps = 0u64;
    let mut quakes = 0u64;

    'search: while steps < limit {
        if target_reached(cfg.target_mf, crate::seqcore::merit_factor(n, best_energy))
            || control.should_stop()
        {
            break;
        }
        steps += 1;
        if !greedy {
            quake(cfg.quake_size, &mut state, &mut rng);
            quakes += 1;
            greedy = true;
            continue;
        }

        let offset = rng.gen_range(0..l);
        let mut improved = false;
        for i in 0..l {
            if i % CONTROL_STRIDE == CONTROL_STRIDE - 1 && control.should_stop() {
                break 'search;
            }
            let q = FlipIndex::new_unchecked((offset + i) % l);
            let delta = state.derivative(q);
            if delta > 0 {
                continue;
            }
            let after = state.energy() + delta;
            let accept = if cfg.accept_current_improving {
                delta < 0
            } else {
                after < best_energy
            };
            // A rejected flip would be undone immediately, so it is never applied.
            if !accept {
                continue;
            }
            state.flip(q);
            improved = true;
            if after < best_energy {
                best_energy = after;
                best.clone_from(state.sequence());
                report(&state, steps);
            }
            break;
        }
        greedy = improved;
    }

    debug_assert_eq!(state.energy(), state.sidelobes().energy());
    Ok(RunRecord::new(
        SolverConfig::Shc(cfg.clone()),
        &best,
        best_energy,
        started,
        steps,
        quakes,
    ))
}
