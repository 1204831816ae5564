//! Decodes and scores the published length-449 record, or any hex string.
//!
//! ```text
//! cargo run --example verify_record -- [n hex]
//! ```

use std::env;

use skewmf::oracle::{lookup, RECORD_449_HEX};
use skewmf::seqio::decode_hex;
use skewmf::{is_skew_symmetric, score};

fn main() -> skewmf::Result<()> {
    let args: Vec<String> = env::args().skip(1).collect();
    let (n, hex) = match args.as_slice() {
        [n, hex, ..] => (n.parse().expect("n"), hex.as_str()),
        _ => (449, RECORD_449_HEX),
    };
    let seq = decode_hex(hex, n)?;
    let report = score(&seq)?;
    println!("n              {}", report.n);
    println!("skew-symmetric {}", is_skew_symmetric(&seq));
    println!("energy         {}", report.energy);
    println!("merit factor   {:.6} ({})", report.merit_factor, report.exact_merit_factor());
    println!("peak sidelobe  {}", report.psl);
    if let Some(known) = lookup(n) {
        println!("best known     {} ({})", known.merit_factor, known.note);
    }
    Ok(())
}
