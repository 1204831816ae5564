//! Exhaustive search over short skew-symmetric lengths, recovering the
//! Barker sequences of length 11 and 13.
//!
//! ```text
//! cargo run --release --example exhaustive_barker -- [max_l]
//! ```

use std::env;
use std::time::Instant;

use skewmf::oracle::exhaustive_best;

fn main() -> skewmf::Result<()> {
    let max_l: usize = env::args().nth(1).map_or(12, |s| s.parse().expect("max_l"));
    println!("{:>4} {:>8} {:>12} {:>10} {:>8}", "n", "energy", "MF", "exact", "optima");
    for l in 1..=max_l {
        let t = Instant::now();
        let r = exhaustive_best(l)?;
        println!(
            "{:>4} {:>8} {:>12.6} {:>10} {:>8}   {:.2?}",
            r.n,
            r.best_energy,
            r.best_mf,
            r.exact_mf().to_string(),
            r.optimal_halves.len(),
            t.elapsed()
        );
        if r.n == 11 || r.n == 13 {
            for s in r.optimal_sequences() {
                let text: String = s.as_slice().iter().map(|&b| if b > 0 { '+' } else { '-' }).collect();
                println!("       {text}");
            }
        }
    }
    Ok(())
}
