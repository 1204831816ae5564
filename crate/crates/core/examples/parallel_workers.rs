//! Independent hill climbers on several threads, sharing only a stop flag.
//! The first worker to reach the target stops the others; every record is
//! appended to a JSON-lines log and read back.
//!
//! ```text
//! cargo run --release --example parallel_workers -- [n] [workers] [target] [log]
//! ```

use std::env;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::thread;
use std::time::Duration;

use skewmf::seqio::{read_run_records, write_run_record};
use skewmf::solvers::{shc_search_with, RunControl, ShcConfig};

fn main() -> skewmf::Result<()> {
    let args: Vec<String> = env::args().skip(1).collect();
    let n: usize = args.first().map_or(501, |s| s.parse().expect("n"));
    let workers: u64 = args.get(1).map_or(4, |s| s.parse().expect("workers"));
    let target: f64 = args.get(2).map_or(5.0, |s| s.parse().expect("target"));
    let log = args
        .get(3)
        .cloned()
        .unwrap_or_else(|| env::temp_dir().join("skewmf-parallel.jsonl").display().to_string());

    let stop = Arc::new(AtomicBool::new(false));
    let mut control = RunControl::with_time_limit(Duration::from_secs(300));
    control.stop = Some(stop.clone());

    let records = thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let control = control.clone();
                let stop = stop.clone();
                s.spawn(move || {
                    let cfg = ShcConfig::for_length(n, 100 + w).with_target(target);
                    let r = shc_search_with(n, &cfg, &control, &mut |_| {});
                    if matches!(&r, Ok(r) if r.best_mf >= target) {
                        stop.store(true, Ordering::Relaxed);
                    }
                    r
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect::<skewmf::Result<Vec<_>>>()
    })?;

    for r in &records {
        write_run_record(&log, r)?;
        println!(
            "seed {:>4}  MF {:.4}  steps {:>8}  quakes {:>6}  {:.2}s",
            r.seed, r.best_mf, r.steps, r.quakes, r.wall_time
        );
    }
    let logged = read_run_records(&log)?;
    let best = logged
        .records
        .iter()
        .filter(|r| r.n == n)
        .max_by(|a, b| a.best_mf.total_cmp(&b.best_mf))
        .expect("records were written");
    println!("{} records in {log}; best MF {:.4} (seed {})", logged.records.len(), best.best_mf, best.seed);
    Ok(())
}
