//! Quake sizes and runtime estimates across lengths, optionally exported as CSV.
//!
//! ```text
//! cargo run --example quake_schedule -- [out.csv]
//! ```

use std::env;

use skewmf::seqio::export_schedule_csv;
use skewmf::solvers::{quake_schedule, quake_table, time_estimate};

fn main() -> skewmf::Result<()> {
    println!("{:>8} {:>6} {:>6} {:>12}", "n", "table", "fit", "est seconds");
    let lengths: Vec<usize> = quake_table().iter().map(|&(n, _)| n).collect();
    for &(n, q) in quake_table() {
        let t = time_estimate(n);
        let note = if t.clamped() { "  (fit negative, clamped)" } else { "" };
        println!("{n:>8} {q:>6} {:>6} {:>12.1}{note}", quake_schedule(n), t.seconds);
    }
    if let Some(path) = env::args().nth(1) {
        export_schedule_csv(&path, lengths)?;
        println!("wrote {path}");
    }
    Ok(())
}
