//! Linear-time paired flips and energy probing on the sidelobe array.
//!
//! Flipping position `q < l` of a skew-symmetric sequence also flips its mirror
//! `n - q - 1`, which keeps the sequence skew-symmetric. With `S_r = S[r - 1]`,
//! only odd `r` can change, and for each such `r` the change is one of six
//! closed forms depending on where `r` sits relative to `q`, `n - q` and `2q + 1`.
//! Applying those closed forms touches each sidelobe once, so a flip costs
//! `O(n)` time and no memory beyond the sequence and the sidelobe array itself.

use crate::error::{Error, Result};
use crate::seqcore::{EnergyReport, SidelobeArray, SkewSymmetricSequence, Spin};

/// A flippable position `q < l`. The mirror position `n - q - 1` is implied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlipIndex(usize);

impl FlipIndex {
    pub fn new(q: usize, half_len: usize) -> Result<Self> {
        if q >= half_len {
            return Err(Error::FlipOutOfRange { q, half_len });
        }
        Ok(Self(q))
    }

    pub fn get(self) -> usize {
        self.0
    }

    pub(crate) fn new_unchecked(q: usize) -> Self {
        Self(q)
    }
}

/// The six cases a sidelobe index can fall into for a given flip.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// Even `r`: the sidelobe is an odd lag and stays zero.
    EvenIndex = 0,
    /// Odd `r <= q`: untouched.
    BelowFlip = 1,
    /// Odd `q < r < n - q`, `r != 2q + 1`: two-product update.
    Inner = 2,
    /// Odd `q < r < n - q`, `r == 2q + 1`: the two flips cancel.
    InnerTie = 3,
    /// Odd `r >= n - q`, `r != 2q + 1`: four-product update.
    Outer = 4,
    /// Odd `r >= n - q`, `r == 2q + 1`: two-product update.
    OuterTie = 5,
}

/// Receives branch hits from the traced flip. The unit type ignores them.
pub trait BranchTally {
    fn hit(&mut self, branch: Branch, count: u64);
}

impl BranchTally for () {
    #[inline(always)]
    fn hit(&mut self, _: Branch, _: u64) {}
}

/// Per-branch hit counters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BranchCounts(pub [u64; 6]);

impl BranchCounts {
    pub fn get(&self, branch: Branch) -> u64 {
        self.0[branch as usize]
    }

    pub fn all_hit(&self) -> bool {
        self.0.iter().all(|&c| c > 0)
    }
}

impl BranchTally for BranchCounts {
    fn hit(&mut self, branch: Branch, count: u64) {
        self.0[branch as usize] += count;
    }
}

fn check(q: FlipIndex, seq: &SkewSymmetricSequence, sidelobes: &SidelobeArray) -> Result<usize> {
    let q = q.get();
    FlipIndex::new(q, seq.half_len())?;
    if sidelobes.len() != seq.len() - 1 {
        return Err(Error::SidelobeLength {
            got: sidelobes.len(),
            expected: seq.len() - 1,
        });
    }
    Ok(q)
}

/// Flips positions `q` and `n - q - 1` and updates the sidelobes in place.
pub fn flip_update(
    q: FlipIndex,
    seq: &mut SkewSymmetricSequence,
    sidelobes: &mut SidelobeArray,
) -> Result<()> {
    flip_update_traced(q, seq, sidelobes, &mut ())
}

/// [`flip_update`] reporting which branches were taken.
pub fn flip_update_traced<T: BranchTally>(
    q: FlipIndex,
    seq: &mut SkewSymmetricSequence,
    sidelobes: &mut SidelobeArray,
    tally: &mut T,
) -> Result<()> {
    let q = check(q, seq, sidelobes)?;
    flip_raw(q, seq.as_slice(), sidelobes.values_mut(), tally);
    seq.negate_pair(q);
    Ok(())
}

/// Exact `E(L^q) - E(L)` without modifying anything.
pub fn derivative(q: FlipIndex, seq: &SkewSymmetricSequence, sidelobes: &SidelobeArray) -> Result<i64> {
    let q = check(q, seq, sidelobes)?;
    Ok(derivative_raw(q, seq.as_slice(), sidelobes.values()))
}

/// Flips like [`flip_update`] and returns the energy change in the same pass.
pub fn try_flip(
    q: FlipIndex,
    seq: &mut SkewSymmetricSequence,
    sidelobes: &mut SidelobeArray,
) -> Result<i64> {
    let q = check(q, seq, sidelobes)?;
    let delta = try_flip_raw(q, seq.as_slice(), sidelobes.values_mut());
    seq.negate_pair(q);
    Ok(delta)
}

/// Sidelobe change at odd `r > q`, read from the sequence before the flip.
#[inline(always)]
fn sidelobe_change<T: BranchTally>(q: usize, r: usize, l: &[Spin], tally: &mut T) -> i32 {
    let n = l.len();
    let e1 = l[q] as i32;
    let e4 = l[n - q - 1] as i32;
    let tie = 2 * q == r - 1;
    if r < n - q {
        if tie {
            tally.hit(Branch::InnerTie, 1);
            0
        } else {
            tally.hit(Branch::Inner, 1);
            let e2 = l[n + q - r] as i32;
            let e3 = l[r - q - 1] as i32;
            -2 * (e1 * e2 + e3 * e4)
        }
    } else {
        let e5 = l[2 * n - q - r - 1] as i32;
        let e6 = l[q + r - n] as i32;
        if tie {
            tally.hit(Branch::OuterTie, 1);
            -2 * (e4 * e5 + e6 * e1)
        } else {
            tally.hit(Branch::Outer, 1);
            let e2 = l[n + q - r] as i32;
            let e3 = l[r - q - 1] as i32;
            -2 * (e1 * e2 + e3 * e4 + e4 * e5 + e6 * e1)
        }
    }
}

/// First odd `r` strictly above `q`.
#[inline(always)]
fn first_odd_above(q: usize) -> usize {
    if q % 2 == 0 {
        q + 1
    } else {
        q + 2
    }
}

/// Updates `s` for flipping `q`; `l` is the sequence before the flip and is
/// left untouched.
pub(crate) fn flip_raw<T: BranchTally>(q: usize, l: &[Spin], s: &mut [i32], tally: &mut T) {
    let n = l.len();
    tally.hit(Branch::EvenIndex, (n as u64 - 1) / 2);
    tally.hit(Branch::BelowFlip, (q as u64 + 1) / 2);
    let mut r = first_odd_above(q);
    while r < n - 1 {
        s[r - 1] += sidelobe_change(q, r, l, tally);
        r += 2;
    }
}

pub(crate) fn try_flip_raw(q: usize, l: &[Spin], s: &mut [i32]) -> i64 {
    let n = l.len();
    let mut delta = 0i64;
    let mut r = first_odd_above(q);
    while r < n - 1 {
        let d = sidelobe_change(q, r, l, &mut ());
        let old = s[r - 1];
        delta += (2 * old * d + d * d) as i64;
        s[r - 1] = old + d;
        r += 2;
    }
    delta
}

/// Closed-form energy difference, accumulated per odd `r` from the current
/// sidelobes only.
pub(crate) fn derivative_raw(q: usize, l: &[Spin], s: &[i32]) -> i64 {
    let n = l.len();
    let half = n / 2;
    let sigma: i64 = if (half - q) % 2 == 0 { 1 } else { -1 };
    let lq = l[q] as i64;
    let mut delta = 0i64;
    let mut r = first_odd_above(q);
    // Inner range: q < r < n - q.
    let inner_end = (n - q).min(n - 1);
    while r < inner_end {
        if 2 * q != r - 1 {
            let kappa = -8 * s[r - 1] as i64 * lq;
            let e1 = l[r - q - 1] as i64;
            delta += 16 + kappa * sigma * e1;
        }
        r += 2;
    }
    // Outer range: r >= n - q.
    while r < n - 1 {
        let kappa = -8 * s[r - 1] as i64 * lq;
        let e2 = l[q + r - n] as i64;
        if 2 * q != r - 1 {
            let e1 = l[r - q - 1] as i64;
            delta += 32 + kappa * (e2 + e1 * sigma) + 32 * e2 * e1 * sigma;
        } else {
            // Both mirrored products reduce to L[q] * e2, so no sign factor here.
            delta += 16 + kappa * e2;
        }
        r += 2;
    }
    delta
}

/// A sequence together with its sidelobes and energy, kept consistent by
/// every mutation.
#[derive(Clone, Debug)]
pub struct FlipState {
    seq: SkewSymmetricSequence,
    sidelobes: SidelobeArray,
    energy: i64,
}

impl FlipState {
    /// Computes the sidelobes once by direct summation.
    pub fn new(seq: SkewSymmetricSequence) -> Self {
        let sidelobes = SidelobeArray::naive(seq.as_slice());
        let energy = sidelobes.energy();
        Self {
            seq,
            sidelobes,
            energy,
        }
    }

    pub fn sequence(&self) -> &SkewSymmetricSequence {
        &self.seq
    }

    pub fn sidelobes(&self) -> &SidelobeArray {
        &self.sidelobes
    }

    pub fn energy(&self) -> i64 {
        self.energy
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn half_len(&self) -> usize {
        self.seq.half_len()
    }

    pub fn report(&self) -> EnergyReport {
        EnergyReport::from_energy(self.seq.len(), self.energy, self.sidelobes.psl())
            .expect("energy is positive for n >= 3")
    }

    pub fn merit_factor(&self) -> f64 {
        crate::seqcore::merit_factor(self.seq.len(), self.energy)
    }

    /// Energy change of flipping `q`. `q` must be below `half_len()`.
    pub fn derivative(&self, q: FlipIndex) -> i64 {
        debug_assert!(q.get() < self.half_len());
        derivative_raw(q.get(), self.seq.as_slice(), self.sidelobes.values())
    }

    /// Flips `q` and returns the energy change.
    pub fn flip(&mut self, q: FlipIndex) -> i64 {
        let q = q.get();
        assert!(q < self.half_len(), "flip index {q} out of range");
        let delta = try_flip_raw(q, self.seq.as_slice(), self.sidelobes.values_mut());
        self.seq.negate_pair(q);
        self.energy += delta;
        debug_assert_eq!(self.energy, self.sidelobes.energy());
        delta
    }

    pub fn into_sequence(self) -> SkewSymmetricSequence {
        self.seq
    }
}
