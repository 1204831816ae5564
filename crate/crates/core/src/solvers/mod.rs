//! Stochastic searchers over skew-symmetric sequences.
//!
//! Both searchers work on a [`FlipState`](crate::incremental::FlipState), so
//! their working set is the sequence, its sidelobe array and, for the
//! self-avoiding walk, one 64-bit fingerprint per visited state.

mod saw;
mod schedule;
mod shc;

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

pub use saw::{
    hash_candidate, pick_best_neighbor, saw_search, saw_search_with, SawConfig, SawWalk,
    VisitedSet, DEFAULT_HASH_P, DEFAULT_HASH_Q,
};
pub use schedule::{
    quake_schedule, quake_table, table_quake, time_estimate, TimeEstimate, QUAKE_TABLE,
};
pub use shc::{quake, quake_at, shc_search, shc_search_with, ShcConfig};

use crate::error::{Error, Result};
use crate::seqcore::SkewSymmetricSequence;
use crate::seqio;

/// Current run log schema.
pub const SCHEMA_VERSION: u32 = 1;

/// Cooperative stop conditions, checked between search iterations.
#[derive(Clone, Debug, Default)]
pub struct RunControl {
    pub deadline: Option<Instant>,
    pub stop: Option<Arc<AtomicBool>>,
}

impl RunControl {
    pub fn with_time_limit(limit: Duration) -> Self {
        Self {
            deadline: Some(Instant::now() + limit),
            stop: None,
        }
    }

    pub fn should_stop(&self) -> bool {
        if let Some(stop) = &self.stop {
            if stop.load(Ordering::Relaxed) {
                return true;
            }
        }
        matches!(self.deadline, Some(d) if Instant::now() >= d)
    }
}

/// A new best-so-far found by a solver.
#[derive(Clone, Debug, PartialEq)]
pub struct Improvement {
    pub energy: i64,
    pub merit_factor: f64,
    pub step: u64,
    pub elapsed: Duration,
}

/// Solver parameters, tagged by algorithm.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "algo", rename_all = "lowercase")]
pub enum SolverConfig {
    Saw(SawConfig),
    Shc(ShcConfig),
}

impl SolverConfig {
    pub fn seed(&self) -> u64 {
        match self {
            SolverConfig::Saw(c) => c.seed,
            SolverConfig::Shc(c) => c.seed,
        }
    }

    pub fn target_mf(&self) -> Option<f64> {
        match self {
            SolverConfig::Saw(c) => c.target_mf,
            SolverConfig::Shc(c) => c.target_mf,
        }
    }
}

/// Outcome of one solver run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub schema_version: u32,
    pub n: usize,
    pub seed: u64,
    pub config: SolverConfig,
    pub best_energy: i64,
    pub best_mf: f64,
    /// First `l + 1` elements of the best sequence, hex encoded.
    pub best_half_hex: String,
    pub wall_time: f64,
    pub steps: u64,
    pub quakes: u64,
}

impl RunRecord {
    pub(crate) fn new(
        config: SolverConfig,
        best: &SkewSymmetricSequence,
        best_energy: i64,
        started: Instant,
        steps: u64,
        quakes: u64,
    ) -> Self {
        let n = best.len();
        Self {
            schema_version: SCHEMA_VERSION,
            n,
            seed: config.seed(),
            config,
            best_energy,
            best_mf: crate::seqcore::merit_factor(n, best_energy),
            best_half_hex: seqio::encode_hex(best.half()),
            wall_time: started.elapsed().as_secs_f64(),
            steps,
            quakes,
        }
    }

    pub fn best_sequence(&self) -> Result<SkewSymmetricSequence> {
        let half = seqio::decode_hex(&self.best_half_hex, self.n / 2 + 1)?;
        SkewSymmetricSequence::from_half(&half)
    }

    pub fn target_met(&self) -> Option<bool> {
        self.config.target_mf().map(|t| self.best_mf >= t)
    }

    /// Field equality ignoring `wall_time`.
    pub fn same_outcome(&self, other: &RunRecord) -> bool {
        let mut a = self.clone();
        a.wall_time = other.wall_time;
        &a == other
    }
}

pub(crate) fn check_length(n: usize) -> Result<()> {
    if n % 2 == 0 {
        return Err(Error::EvenLength(n));
    }
    if n < 3 {
        return Err(Error::TooShort(n));
    }
    Ok(())
}

pub(crate) fn target_reached(target: Option<f64>, mf: f64) -> bool {
    matches!(target, Some(t) if mf >= t)
}
