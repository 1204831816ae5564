//! Ground truth: exhaustive search for short lengths, published values and
//! the memory model comparing the quadratic product table with the sidelobe
//! array.

use std::thread;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::seqcore::{exact_merit_factor, merit_factor, SidelobeArray, SkewSymmetricSequence, Spin};

/// Largest half-length accepted by [`exhaustive_best`].
pub const MAX_EXHAUSTIVE_HALF_LEN: usize = 16;

#[derive(Clone, Debug, PartialEq)]
pub struct ExhaustiveResult {
    pub n: usize,
    pub best_energy: i64,
    pub best_mf: f64,
    /// Optimal halves (`l + 1` elements each) with `b_0 = +1`, in enumeration order.
    pub optimal_halves: Vec<Vec<Spin>>,
}

impl ExhaustiveResult {
    pub fn exact_mf(&self) -> Ratio<u64> {
        exact_merit_factor(self.n, self.best_energy)
    }

    pub fn optimal_sequences(&self) -> impl Iterator<Item = SkewSymmetricSequence> + '_ {
        self.optimal_halves
            .iter()
            .map(|h| SkewSymmetricSequence::from_half(h).expect("valid half"))
    }
}

fn half_from_index(l: usize, idx: u64) -> Vec<Spin> {
    std::iter::once(1)
        .chain((0..l).map(|k| if (idx >> (l - 1 - k)) & 1 == 1 { 1 } else { -1 }))
        .collect()
}

fn scan(l: usize, range: std::ops::Range<u64>) -> (i64, Vec<Vec<Spin>>) {
    let mut best = i64::MAX;
    let mut halves = Vec::new();
    for idx in range {
        let half = half_from_index(l, idx);
        let seq = SkewSymmetricSequence::from_half(&half).expect("valid half");
        let e = SidelobeArray::naive(seq.as_slice()).energy();
        if e < best {
            best = e;
            halves.clear();
        }
        if e == best {
            halves.push(half);
        }
    }
    (best, halves)
}

/// Scores every skew-symmetric sequence of half-length `l` with `b_0 = +1`
/// (complements share all sidelobes, so this covers every sequence).
pub fn exhaustive_best(l: usize) -> Result<ExhaustiveResult> {
    if l > MAX_EXHAUSTIVE_HALF_LEN {
        return Err(Error::ExhaustiveTooLarge(l));
    }
    if l == 0 {
        return Err(Error::TooShort(1));
    }
    let total = 1u64 << l;
    let workers = thread::available_parallelism()
        .map(|w| w.get() as u64)
        .unwrap_or(1)
        .min(total.div_ceil(1024))
        .max(1);
    let chunk = total.div_ceil(workers);
    let parts: Vec<(i64, Vec<Vec<Spin>>)> = thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let start = (w * chunk).min(total);
                let end = ((w + 1) * chunk).min(total);
                s.spawn(move || scan(l, start..end))
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let best_energy = parts.iter().map(|p| p.0).min().unwrap();
    let optimal_halves = parts
        .into_iter()
        .filter(|p| p.0 == best_energy)
        .flat_map(|p| p.1)
        .collect();
    let n = 2 * l + 1;
    Ok(ExhaustiveResult {
        n,
        best_energy,
        best_mf: merit_factor(n, best_energy),
        optimal_halves,
    })
}

/// Bytes needed by the `n x n` product table versus the sidelobe array,
/// both with 4-byte integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MemoryEstimate {
    pub n: u64,
    pub tau_bytes: u64,
    pub sidelobe_bytes: u64,
}

impl MemoryEstimate {
    pub fn tau_human(&self) -> String {
        human_bytes(self.tau_bytes)
    }

    pub fn sidelobe_human(&self) -> String {
        human_bytes(self.sidelobe_bytes)
    }
}

pub fn memory_estimate(n: u64) -> MemoryEstimate {
    MemoryEstimate {
        n,
        tau_bytes: 4 * n * n,
        sidelobe_bytes: 4 * n,
    }
}

/// Lengths tabulated in the published memory comparison.
pub const MEMORY_TABLE_LENGTHS: [u64; 6] = [256, 512, 1024, 5000, 20000, 99999];

const KIB: u64 = 1 << 10;
const MIB: u64 = 1 << 20;
const GIB: u64 = 1 << 30;

/// Binary units. Below 1 MiB uses KB, below 2 GiB uses MB, above that GB.
/// Whole values print one decimal, others two.
pub fn human_bytes(bytes: u64) -> String {
    let (unit, div) = if bytes < MIB {
        ("KB", KIB)
    } else if bytes < 2 * GIB {
        ("MB", MIB)
    } else {
        ("GB", GIB)
    };
    if bytes % div == 0 {
        format!("{:.1} {unit}", (bytes / div) as f64)
    } else {
        format!("{:.2} {unit}", bytes as f64 / div as f64)
    }
}

/// `n | tau table | sidelobe array` rows for [`MEMORY_TABLE_LENGTHS`].
pub fn memory_table() -> Vec<(u64, String, String)> {
    MEMORY_TABLE_LENGTHS
        .iter()
        .map(|&n| {
            let m = memory_estimate(n);
            (n, m.tau_human(), m.sidelobe_human())
        })
        .collect()
}

/// A published merit factor.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KnownRecord {
    pub n: usize,
    pub merit_factor: f64,
    /// Exact value as `(numerator, denominator)` where known.
    pub exact: Option<(u64, u64)>,
    /// Hex payload in the crate's codec, whitespace included as printed.
    pub hex: Option<&'static str>,
    pub note: &'static str,
}

/// Length-449 skew-symmetric sequence with merit factor 6.5319.
pub const RECORD_449_HEX: &str = "96f633d86fe825794ed23a9dfd7d4c3
abd080cf76cbf9bdab9a7b2533e3161
901d1950c774ca8bd012cfd7d5d8123
c4f97e285469d327478";

static KNOWN_RECORDS: [KnownRecord; 4] = [
    KnownRecord {
        n: 11,
        merit_factor: 12.1,
        exact: Some((121, 10)),
        hex: None,
        note: "Barker 11",
    },
    KnownRecord {
        n: 13,
        merit_factor: 169.0 / 12.0,
        exact: Some((169, 12)),
        hex: None,
        note: "Barker 13",
    },
    KnownRecord {
        n: 449,
        merit_factor: 6.5218,
        exact: None,
        hex: None,
        note: "previous best, grid search",
    },
    KnownRecord {
        n: 449,
        merit_factor: 6.5319,
        exact: None,
        hex: Some(RECORD_449_HEX),
        note: "self-avoiding walk record",
    },
];

pub fn known_records() -> &'static [KnownRecord] {
    &KNOWN_RECORDS
}

/// Highest registered merit factor for `n`.
pub fn lookup(n: usize) -> Option<&'static KnownRecord> {
    KNOWN_RECORDS
        .iter()
        .filter(|r| r.n == n)
        .max_by(|a, b| a.merit_factor.total_cmp(&b.merit_factor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqcore::is_skew_symmetric;

    #[test]
    fn exhaustive_n5() {
        let r = exhaustive_best(2).unwrap();
        assert_eq!(r.best_energy, 2);
        assert_eq!(r.best_mf, 6.25);
    }

    #[test]
    fn exhaustive_barkers() {
        let r = exhaustive_best(5).unwrap();
        assert_eq!(r.exact_mf(), Ratio::new(121, 10));
        assert!(r
            .optimal_sequences()
            .any(|s| s.as_slice() == [1, 1, 1, -1, -1, -1, 1, -1, -1, 1, -1]));

        let r = exhaustive_best(6).unwrap();
        assert_eq!(r.exact_mf(), Ratio::new(169, 12));
        assert!(r
            .optimal_sequences()
            .any(|s| s.as_slice() == [1, 1, 1, 1, 1, -1, -1, 1, 1, -1, 1, -1, 1]));
    }

    #[test]
    fn exhaustive_witnesses_are_valid() {
        let r = exhaustive_best(9).unwrap();
        for s in r.optimal_sequences() {
            assert!(is_skew_symmetric(s.as_slice()));
            assert_eq!(s.as_slice()[0], 1);
            let sl = SidelobeArray::naive(s.as_slice());
            assert_eq!(sl.energy(), r.best_energy);
            assert!((1..s.len()).step_by(2).all(|u| sl.lag(u) == 0));
        }
    }

    #[test]
    fn exhaustive_guard() {
        assert!(matches!(
            exhaustive_best(17),
            Err(Error::ExhaustiveTooLarge(17))
        ));
        assert!(exhaustive_best(30).is_err());
    }

    #[test]
    fn memory_rows() {
        let rows = memory_table();
        let expected = [
            (256, "256.0 KB", "1.0 KB"),
            (512, "1.0 MB", "2.0 KB"),
            (1024, "4.0 MB", "4.0 KB"),
            (5000, "95.37 MB", "19.53 KB"),
            (20000, "1525.88 MB", "78.12 KB"),
            (99999, "37.25 GB", "390.62 KB"),
        ];
        for ((n, tau, side), (en, etau, eside)) in rows.iter().zip(expected) {
            assert_eq!((*n, tau.as_str(), side.as_str()), (en, etau, eside));
        }
    }

    #[test]
    fn registry() {
        let r = lookup(449).unwrap();
        assert_eq!(r.merit_factor, 6.5319);
        assert!(r.hex.is_some());
        assert_eq!(lookup(13).unwrap().exact, Some((169, 12)));
        assert!(lookup(7).is_none());
        assert_eq!(known_records().iter().filter(|r| r.n == 449).count(), 2);
    }
}
