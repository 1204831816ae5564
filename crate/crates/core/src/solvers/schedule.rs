//! Quake-size and runtime rules of thumb for the hill climber.

/// `(n, quake size)` pairs observed to reach merit factor above 5.
pub const QUAKE_TABLE: [(usize, u32); 9] = [
    (999, 1),
    (1499, 2),
    (1999, 3),
    (2999, 4),
    (4999, 6),
    (10001, 14),
    (20001, 30),
    (50001, 70),
    (100001, 160),
];

const QUAKE_SLOPE: f64 = 0.001578787;
const QUAKE_INTERCEPT: f64 = -1.546093;

const TIME_C0: f64 = 177.2867;
const TIME_C1: f64 = -0.0562043;
const TIME_C2: f64 = 0.000002340029;

/// `max(1, ceil(0.001578787 n - 1.546093))`.
pub fn quake_schedule(n: usize) -> u32 {
    let q = (QUAKE_SLOPE * n as f64 + QUAKE_INTERCEPT).ceil();
    if q < 1.0 {
        1
    } else {
        q as u32
    }
}

pub fn quake_table() -> &'static [(usize, u32)] {
    &QUAKE_TABLE
}

/// Tabulated quake size for `n`, if `n` is one of the tabulated lengths.
pub fn table_quake(n: usize) -> Option<u32> {
    QUAKE_TABLE.iter().find(|&&(m, _)| m == n).map(|&(_, q)| q)
}

/// Expected seconds to reach merit factor above 5 on a 12-thread desktop.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimeEstimate {
    /// The quadratic fit, which is negative for `n` roughly in `3736..=20283`.
    pub raw: f64,
    /// `max(0, raw)`.
    pub seconds: f64,
}

impl TimeEstimate {
    pub fn clamped(&self) -> bool {
        self.raw < 0.0
    }
}

pub fn time_estimate(n: usize) -> TimeEstimate {
    let x = n as f64;
    let raw = TIME_C0 + TIME_C1 * x + TIME_C2 * x * x;
    TimeEstimate {
        raw,
        seconds: raw.max(0.0),
    }
}
