//! Walks through the linear-time kernels on one sequence: the derivative of
//! every flip, the branch counts of an in-place update, and a check against
//! the naive quadratic computation.
//!
//! ```text
//! cargo run --example incremental_flip -- [l] [seed]
//! ```

use std::env;

use skewmf::incremental::{flip_update_traced, Branch, BranchCounts};
use skewmf::{derivative, sidelobes_naive, FlipIndex, SkewSymmetricSequence};

fn main() -> skewmf::Result<()> {
    let args: Vec<String> = env::args().skip(1).collect();
    let l: usize = args.first().map_or(12, |s| s.parse().expect("l"));
    let seed: u64 = args.get(1).map_or(7, |s| s.parse().expect("seed"));

    let mut seq = SkewSymmetricSequence::random(l, seed)?;
    let mut sidelobes = sidelobes_naive(seq.as_slice());
    println!("n={} energy={}", seq.len(), sidelobes.energy());
    println!("sidelobes {:?}", sidelobes.values());

    let mut best = (0, i64::MAX);
    for q in 0..l {
        let d = derivative(FlipIndex::new(q, l)?, &seq, &sidelobes)?;
        println!("  flip q={q:<3} delta {d:>6}");
        if d < best.1 {
            best = (q, d);
        }
    }

    let (q, d) = best;
    let mut counts = BranchCounts::default();
    flip_update_traced(FlipIndex::new(q, l)?, &mut seq, &mut sidelobes, &mut counts)?;
    let naive = sidelobes_naive(seq.as_slice());
    println!("applied q={q}: energy {} (predicted delta {d})", sidelobes.energy());
    println!("matches naive recomputation: {}", sidelobes == naive);
    for b in [
        Branch::EvenIndex,
        Branch::BelowFlip,
        Branch::Inner,
        Branch::InnerTie,
        Branch::Outer,
        Branch::OuterTie,
    ] {
        println!("  {b:?}: {}", counts.get(b));
    }
    Ok(())
}
