//! Restarted self-avoiding walks with fingerprint tabu.
//!
//! ```text
//! cargo run --release --example self_avoiding_walk -- [n] [inner] [walks] [seed] [target]
//! ```

use std::env;

use skewmf::solvers::{saw_search_with, RunControl, SawConfig};

fn main() -> skewmf::Result<()> {
    let args: Vec<String> = env::args().skip(1).collect();
    let arg = |i: usize, default: u64| args.get(i).map_or(default, |s| s.parse().expect("integer"));
    let n = arg(0, 201) as usize;
    let inner = arg(1, 8 * n as u64);
    let walks = arg(2, 1000);
    let seed = arg(3, 1);
    let target: Option<f64> = args.get(4).map(|s| s.parse().expect("target"));

    let mut cfg = SawConfig::new(inner, walks, seed);
    cfg.target_mf = target;
    println!("n={n} inner={inner} walks={walks} seed={seed}");

    let record = saw_search_with(n, &cfg, &RunControl::default(), &mut |imp| {
        println!(
            "{:>9.3}s  step {:>9}  energy {:>8}  MF {:.4}",
            imp.elapsed.as_secs_f64(),
            imp.step,
            imp.energy,
            imp.merit_factor
        );
    })?;
    println!(
        "best MF {:.6} (energy {}) after {} flips, {:.2}s",
        record.best_mf, record.best_energy, record.steps, record.wall_time
    );
    let seq = record.best_sequence()?;
    println!("half hex {}  ({} elements)", record.best_half_hex, seq.len());
    Ok(())
}
