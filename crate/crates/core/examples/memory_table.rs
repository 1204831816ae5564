//! Memory needed by the quadratic product table versus the sidelobe array.
//!
//! ```text
//! cargo run --example memory_table -- [n ...]
//! ```

use std::env;

use skewmf::oracle::{memory_estimate, memory_table};

fn main() {
    let extra: Vec<u64> = env::args()
        .skip(1)
        .map(|s| s.parse().expect("length"))
        .collect();
    println!("{:<8} {:>14} {:>14}", "n", "tau table", "sidelobes");
    for (n, tau, side) in memory_table() {
        println!("{n:<8} {tau:>14} {side:>14}");
    }
    for n in extra {
        let m = memory_estimate(n);
        println!("{n:<8} {:>14} {:>14}", m.tau_human(), m.sidelobe_human());
    }
}
