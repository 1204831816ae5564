//! Skew-symmetric sequences and the reference (quadratic-time) autocorrelation.
//!
//! A binary sequence `b_0 .. b_{n-1}` with elements in `{-1, +1}` has aperiodic
//! autocorrelations `C_u = sum_j b_j b_{j+u}`. `C_0 = n` is the mainlobe and the
//! remaining `C_u` are the sidelobes. The energy is the sum of squared sidelobes
//! and the merit factor is `n^2 / (2 E)`.
//!
//! A sequence of odd length `n = 2l + 1` is skew-symmetric when
//! `b_{l+i} = (-1)^i b_{l-i}` for `i = 1..=l`. Every odd-lag sidelobe of such a
//! sequence vanishes.

use std::fmt;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// A `-1`/`+1` element.
pub type Spin = i8;

/// Odd-length `±1` sequence satisfying the skew-symmetry relation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SkewSymmetricSequence {
    elems: Vec<Spin>,
}

impl SkewSymmetricSequence {
    /// Extends the first `l + 1` elements to the unique skew-symmetric sequence
    /// of length `2l + 1`.
    pub fn from_half(half: &[Spin]) -> Result<Self> {
        if half.is_empty() {
            return Err(Error::EmptyHalf);
        }
        check_spins(half)?;
        let l = half.len() - 1;
        let n = 2 * l + 1;
        if n < 3 {
            return Err(Error::TooShort(n));
        }
        let mut elems = Vec::with_capacity(n);
        elems.extend_from_slice(half);
        for i in 1..=l {
            let b = half[l - i];
            elems.push(if i % 2 == 0 { b } else { -b });
        }
        Ok(Self { elems })
    }

    /// Validates a full sequence.
    pub fn from_elements(elems: Vec<Spin>) -> Result<Self> {
        check_spins(&elems)?;
        let n = elems.len();
        if n % 2 == 0 {
            return Err(Error::EvenLength(n));
        }
        if n < 3 {
            return Err(Error::TooShort(n));
        }
        if !is_skew_symmetric(&elems) {
            return Err(Error::NotSkewSymmetric);
        }
        Ok(Self { elems })
    }

    /// Uniformly random sequence of half-length `l` (length `2l + 1`).
    pub fn random(l: usize, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::random_with(l, &mut rng)
    }

    pub fn random_with<R: Rng + ?Sized>(l: usize, rng: &mut R) -> Result<Self> {
        if l == 0 {
            return Err(Error::ZeroHalfLength);
        }
        let half: Vec<Spin> = (0..=l)
            .map(|_| if rng.gen::<bool>() { 1 } else { -1 })
            .collect();
        Self::from_half(&half)
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `l = (n - 1) / 2`.
    pub fn half_len(&self) -> usize {
        self.elems.len() / 2
    }

    /// The first `l + 1` elements, which determine the sequence.
    pub fn half(&self) -> &[Spin] {
        &self.elems[..=self.half_len()]
    }

    pub fn as_slice(&self) -> &[Spin] {
        &self.elems
    }

    pub fn into_vec(self) -> Vec<Spin> {
        self.elems
    }

    pub fn complement(&self) -> Self {
        Self {
            elems: complement(&self.elems),
        }
    }

    pub fn reversed(&self) -> Self {
        let mut elems = self.elems.clone();
        elems.reverse();
        Self { elems }
    }

    /// Negates positions `q` and `n - q - 1` without touching any sidelobes.
    pub(crate) fn negate_pair(&mut self, q: usize) {
        let n = self.elems.len();
        self.elems[q] = -self.elems[q];
        self.elems[n - q - 1] = -self.elems[n - q - 1];
    }
}

impl fmt::Debug for SkewSymmetricSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewSymmetricSequence(n={}, ", self.len())?;
        for &b in &self.elems {
            f.write_str(if b > 0 { "+" } else { "-" })?;
        }
        f.write_str(")")
    }
}

impl AsRef<[Spin]> for SkewSymmetricSequence {
    fn as_ref(&self) -> &[Spin] {
        &self.elems
    }
}

fn check_spins(elems: &[Spin]) -> Result<()> {
    match elems.iter().position(|&b| b != 1 && b != -1) {
        Some(index) => Err(Error::InvalidElement {
            index,
            value: elems[index] as i64,
        }),
        None => Ok(()),
    }
}

/// Convenience wrapper around [`SkewSymmetricSequence::random`].
pub fn random_sequence(l: usize, seed: u64) -> Result<SkewSymmetricSequence> {
    SkewSymmetricSequence::random(l, seed)
}

/// True iff `seq` has odd length, only `±1` entries, and satisfies
/// `b_{l+i} = (-1)^i b_{l-i}`.
pub fn is_skew_symmetric(seq: &[Spin]) -> bool {
    let n = seq.len();
    if n % 2 == 0 || seq.iter().any(|&b| b != 1 && b != -1) {
        return false;
    }
    let l = n / 2;
    (1..=l).all(|i| {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        seq[l + i] == sign * seq[l - i]
    })
}

pub fn complement(seq: &[Spin]) -> Vec<Spin> {
    seq.iter().map(|&b| -b).collect()
}

/// Direct aperiodic autocorrelation `C_0 .. C_{n-1}`.
pub fn autocorrelation(seq: &[Spin]) -> Vec<i64> {
    let n = seq.len();
    (0..n)
        .map(|u| {
            seq[..n - u]
                .iter()
                .zip(&seq[u..])
                .map(|(&a, &b)| (a as i64) * (b as i64))
                .sum()
        })
        .collect()
}

/// Reversed sidelobe vector: entry `i` holds `C_{n-i-1}` for `i in 0..n-1`.
/// The mainlobe is not stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SidelobeArray {
    values: Vec<i32>,
}

impl SidelobeArray {
    /// Quadratic-time construction by direct summation
    /// `values[i] = sum_{j=0..=i} b_j b_{j+n-i-1}`.
    pub fn naive(seq: &[Spin]) -> Self {
        let n = seq.len();
        assert!(n >= 2, "sidelobes need n >= 2");
        let values = (0..n - 1)
            .map(|i| {
                let shift = n - i - 1;
                seq[..=i]
                    .iter()
                    .zip(&seq[shift..])
                    .map(|(&a, &b)| (a as i32) * (b as i32))
                    .sum()
            })
            .collect();
        Self { values }
    }

    pub fn from_values(values: Vec<i32>) -> Self {
        Self { values }
    }

    pub fn values(&self) -> &[i32] {
        &self.values
    }

    pub(crate) fn values_mut(&mut self) -> &mut [i32] {
        &mut self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Sum of squares of all entries.
    pub fn energy(&self) -> i64 {
        self.values.iter().map(|&v| (v as i64) * (v as i64)).sum()
    }

    pub fn psl(&self) -> i64 {
        self.values
            .iter()
            .map(|&v| (v as i64).abs())
            .max()
            .unwrap_or(0)
    }

    /// Sidelobe `C_u` for lag `u in 1..n`.
    pub fn lag(&self, u: usize) -> i32 {
        self.values[self.values.len() - u]
    }
}

/// Sidelobes of `seq` by direct summation. Reference path for the
/// incremental updates.
pub fn sidelobes_naive(seq: &[Spin]) -> SidelobeArray {
    SidelobeArray::naive(seq)
}

/// Energy, merit factor and peak sidelobe level of a sequence.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnergyReport {
    pub n: usize,
    pub energy: i64,
    pub merit_factor: f64,
    pub psl: i64,
}

impl EnergyReport {
    pub fn from_energy(n: usize, energy: i64, psl: i64) -> Result<Self> {
        if energy <= 0 {
            return Err(Error::ZeroEnergy);
        }
        Ok(Self {
            n,
            energy,
            merit_factor: merit_factor(n, energy),
            psl,
        })
    }

    /// `n^2 / (2E)` as a reduced fraction.
    pub fn exact_merit_factor(&self) -> Ratio<u64> {
        exact_merit_factor(self.n, self.energy)
    }
}

pub fn merit_factor(n: usize, energy: i64) -> f64 {
    (n as f64) * (n as f64) / (2.0 * energy as f64)
}

pub fn exact_merit_factor(n: usize, energy: i64) -> Ratio<u64> {
    Ratio::new((n as u64) * (n as u64), 2 * energy as u64)
}

/// Scores `seq` from its sidelobe array.
pub fn report(seq: &[Spin], sidelobes: &SidelobeArray) -> Result<EnergyReport> {
    let expected = seq.len().saturating_sub(1);
    if sidelobes.len() != expected {
        return Err(Error::SidelobeLength {
            got: sidelobes.len(),
            expected,
        });
    }
    EnergyReport::from_energy(seq.len(), sidelobes.energy(), sidelobes.psl())
}

/// Naive end-to-end scoring.
pub fn score(seq: &[Spin]) -> Result<EnergyReport> {
    report(seq, &SidelobeArray::naive(seq))
}
