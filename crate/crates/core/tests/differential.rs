//! Incremental kernels against the naive O(n^2) sidelobe computation.

use proptest::prelude::*;
use skewmf::incremental::{flip_update_traced, try_flip, Branch, BranchCounts};
use skewmf::{derivative, flip_update, sidelobes_naive, FlipIndex, FlipState, SkewSymmetricSequence};

fn seq_and_flip() -> impl Strategy<Value = (SkewSymmetricSequence, usize)> {
    (2usize..=100, any::<u64>()).prop_flat_map(|(l, seed)| {
        (Just(SkewSymmetricSequence::random(l, seed).unwrap()), 0..l)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn flip_update_matches_naive((seq, q) in seq_and_flip()) {
        let l = seq.half_len();
        let mut seq = seq;
        let mut sl = sidelobes_naive(seq.as_slice());
        let e0 = sl.energy();
        let fq = FlipIndex::new(q, l).unwrap();
        let d = derivative(fq, &seq, &sl).unwrap();
        flip_update(fq, &mut seq, &mut sl).unwrap();
        let naive = sidelobes_naive(seq.as_slice());
        prop_assert_eq!(&sl, &naive);
        prop_assert_eq!(d, naive.energy() - e0);
    }

    #[test]
    fn derivative_is_pure((seq, q) in seq_and_flip()) {
        let sl = sidelobes_naive(seq.as_slice());
        let fq = FlipIndex::new(q, seq.half_len()).unwrap();
        let before = (seq.clone(), sl.clone());
        let a = derivative(fq, &seq, &sl).unwrap();
        let b = derivative(fq, &seq, &sl).unwrap();
        prop_assert_eq!(a, b);
        prop_assert_eq!((seq, sl), before);
    }

    #[test]
    fn try_flip_agrees((seq, q) in seq_and_flip()) {
        let fq = FlipIndex::new(q, seq.half_len()).unwrap();
        let mut s1 = seq.clone();
        let mut sl1 = sidelobes_naive(seq.as_slice());
        let d = derivative(fq, &s1, &sl1).unwrap();
        prop_assert_eq!(try_flip(fq, &mut s1, &mut sl1).unwrap(), d);
        prop_assert_eq!(sl1, sidelobes_naive(s1.as_slice()));
    }

    #[test]
    fn negative_delta_raises_merit_factor((seq, q) in seq_and_flip()) {
        let mut st = FlipState::new(seq);
        let fq = FlipIndex::new(q, st.half_len()).unwrap();
        let mf0 = st.merit_factor();
        let d = st.derivative(fq);
        st.flip(fq);
        if d < 0 {
            prop_assert!(st.merit_factor() > mf0);
        } else if d == 0 {
            prop_assert_eq!(st.merit_factor(), mf0);
        } else {
            prop_assert!(st.merit_factor() < mf0);
        }
    }
}

#[test]
fn every_branch_is_exercised() {
    let mut counts = BranchCounts::default();
    for seed in 0..300u64 {
        let l = 2 + (seed as usize % 99);
        let mut seq = SkewSymmetricSequence::random(l, seed).unwrap();
        let mut sl = sidelobes_naive(seq.as_slice());
        let q = (seed as usize * 7) % l;
        flip_update_traced(FlipIndex::new(q, l).unwrap(), &mut seq, &mut sl, &mut counts).unwrap();
        assert_eq!(sl, sidelobes_naive(seq.as_slice()));
    }
    for b in [
        Branch::EvenIndex,
        Branch::BelowFlip,
        Branch::Inner,
        Branch::InnerTie,
        Branch::Outer,
        Branch::OuterTie,
    ] {
        assert!(counts.get(b) > 0, "{b:?} never taken");
    }
}

#[test]
fn long_flip_chain_stays_exact() {
    let l = 250;
    let mut st = FlipState::new(SkewSymmetricSequence::random(l, 42).unwrap());
    let mut energy = st.energy();
    for k in 0..2000 {
        let q = FlipIndex::new((k * 131 + 17) % l, l).unwrap();
        energy += st.flip(q);
    }
    assert_eq!(energy, st.energy());
    assert_eq!(st.sidelobes(), &sidelobes_naive(st.sequence().as_slice()));
}

#[test]
fn out_of_range_flip_is_rejected() {
    let seq = SkewSymmetricSequence::random(5, 1).unwrap();
    assert!(FlipIndex::new(5, 5).is_err());
    let short = sidelobes_naive(&seq.as_slice()[..9]);
    let q = FlipIndex::new(0, 5).unwrap();
    assert!(derivative(q, &seq, &short).is_err());
}
