//! Merit factor evaluation and stochastic search for skew-symmetric binary
//! sequences in linear memory.
//!
//! The central structure is the [`SidelobeArray`]: the `n - 1` aperiodic
//! autocorrelation sidelobes of a sequence, updated in `O(n)` per paired flip
//! ([`incremental::flip_update`]) and probed in `O(n)` without mutation
//! ([`incremental::derivative`]). The two searchers in [`solvers`] build on
//! that: a self-avoiding walk with a fingerprint set, and a hill climber with
//! quakes that needs no extra memory at all.
//!
//! ```
//! use skewmf::{score, SkewSymmetricSequence};
//!
//! let barker13 = SkewSymmetricSequence::from_half(&[1, 1, 1, 1, 1, -1, -1]).unwrap();
//! let report = score(barker13.as_slice()).unwrap();
//! assert_eq!(report.energy, 6);
//! assert!((report.merit_factor - 169.0 / 12.0).abs() < 1e-12);
//! ```

pub mod cli;
pub mod error;
pub mod incremental;
pub mod oracle;
pub mod seqcore;
pub mod seqio;
pub mod solvers;

pub use error::{Error, Result};
pub use incremental::{derivative, flip_update, try_flip, FlipIndex, FlipState};
pub use seqcore::{
    complement, is_skew_symmetric, random_sequence, report, score, sidelobes_naive,
    EnergyReport, SidelobeArray, SkewSymmetricSequence, Spin,
};
