//! Stochastic hill climbing with quakes until a target merit factor is reached.
//!
//! ```text
//! cargo run --release --example hill_climb -- [n] [target] [seed] [--record-only]
//! ```

use std::env;
use std::time::Duration;

use skewmf::solvers::{shc_search_with, RunControl, ShcConfig};

fn main() -> skewmf::Result<()> {
    let args: Vec<String> = env::args().skip(1).collect();
    let record_only = args.iter().any(|a| a == "--record-only");
    let mut pos = args.iter().filter(|a| !a.starts_with("--"));
    let n: usize = pos.next().map_or(1001, |s| s.parse().expect("n"));
    let target: f64 = pos.next().map_or(5.0, |s| s.parse().expect("target"));
    let seed: u64 = pos.next().map_or(1, |s| s.parse().expect("seed"));

    let mut cfg = ShcConfig::for_length(n, seed).with_target(target);
    cfg.accept_current_improving = !record_only;
    println!("n={n} quake={} target={target} seed={seed} record_only={record_only}", cfg.quake_size);

    let control = RunControl::with_time_limit(Duration::from_secs(600));
    let mut last = 0.0;
    let record = shc_search_with(n, &cfg, &control, &mut |imp| {
        if imp.merit_factor - last >= 0.05 {
            last = imp.merit_factor;
            println!(
                "{:>9.3}s  step {:>9}  energy {:>10}  MF {:.4}",
                imp.elapsed.as_secs_f64(),
                imp.step,
                imp.energy,
                imp.merit_factor
            );
        }
    })?;
    println!(
        "best MF {:.6} (energy {}) after {} steps, {} quakes, {:.2}s",
        record.best_mf, record.best_energy, record.steps, record.quakes, record.wall_time
    );
    Ok(())
}
