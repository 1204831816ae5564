//! Command-line front end: optimization runs, verification, exhaustive
//! search, benchmarks and schedule estimates.
//!
//! Exit codes: 0 success, 1 target not met when a run stopped, 2 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::mpsc;
use std::sync::Arc;
use std::thread;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::incremental::{derivative_raw, FlipIndex, FlipState};
use crate::oracle::{exhaustive_best, memory_table, MAX_EXHAUSTIVE_HALF_LEN};
use crate::seqcore::{is_skew_symmetric, score, SkewSymmetricSequence};
use crate::seqio::{decode_hex, encode_hex, export_schedule_csv, write_run_record};
use crate::solvers::{
    quake_schedule, saw_search_with, shc_search_with, table_quake, time_estimate, Improvement,
    RunControl, RunRecord, SawConfig, ShcConfig,
};

/// Directory for run logs when `--log` is not given.
pub const LOG_DIR_ENV: &str = "SKEWMF_LOG_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_TARGET_UNMET: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "skewmf", version, about = "Merit factor search for skew-symmetric binary sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run independent solver instances and report the best sequence.
    Optimize(OptimizeArgs),
    /// Score a hex-encoded sequence.
    Verify(VerifyArgs),
    /// Exhaustively search all skew-symmetric sequences of a half-length.
    Exhaustive(ExhaustiveArgs),
    /// Time the derivative and flip kernels and print the memory comparison.
    Bench(BenchArgs),
    /// Quake size and runtime estimate for a length.
    Estimate(EstimateArgs),
    /// Write quake size and runtime estimates as CSV.
    Schedule(ScheduleArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Algo {
    Saw,
    Shc,
}

#[derive(Args, Debug)]
struct OptimizeArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = Algo::Shc)]
    algo: Algo,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Base seed; worker `i` uses `seed + i`.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    target_mf: Option<f64>,
    /// Quake size (shc); defaults to the linear schedule.
    #[arg(long)]
    quake: Option<u32>,
    /// Flips per walk (saw); defaults to 8n.
    #[arg(long)]
    inner: Option<u64>,
    /// Walks per worker (saw).
    #[arg(long)]
    outer: Option<u64>,
    /// Iteration budget (shc).
    #[arg(long)]
    steps: Option<u64>,
    /// Hill climber acceptance: take any improving flip (true) or only flips
    /// that beat the record (false).
    #[arg(long, action = clap::ArgAction::Set)]
    accept_current_improving: Option<bool>,
    /// Append run records to this JSON-lines file.
    #[arg(long)]
    log: Option<PathBuf>,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    time_limit: Option<f64>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    hex: String,
    #[arg(long)]
    n: usize,
}

#[derive(Args, Debug)]
struct ExhaustiveArgs {
    #[arg(long)]
    l: usize,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [2001usize, 20001])]
    n_list: Vec<usize>,
    #[arg(long, default_value_t = 2000)]
    reps: u64,
}

#[derive(Args, Debug)]
struct EstimateArgs {
    #[arg(long)]
    n: usize,
}

#[derive(Args, Debug)]
struct ScheduleArgs {
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_delimiter = ',', default_values_t = [999usize, 1499, 1999, 2999, 4999, 10001, 20001, 50001, 100001])]
    n_list: Vec<usize>,
}

struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

type CmdResult = Result<i32, Usage>;

/// Entry point for the binary.
pub fn main_with_env() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Optimize(a) => optimize(a, out, err),
        Command::Verify(a) => verify(a, out),
        Command::Exhaustive(a) => exhaustive(a, out),
        Command::Bench(a) => bench(a, out),
        Command::Estimate(a) => estimate(a, out, err),
        Command::Schedule(a) => schedule(a, out),
    };
    match result {
        Ok(code) => code,
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn check_n(n: usize) -> Result<(), Usage> {
    if n % 2 == 0 {
        return Err(Usage("n must be odd".into()));
    }
    if n < 3 {
        return Err(Usage("n must be at least 3".into()));
    }
    Ok(())
}

enum WorkerConfig {
    Saw(SawConfig),
    Shc(ShcConfig),
}

enum Event {
    Improved(usize, Improvement),
    Done(usize, crate::Result<RunRecord>),
}

fn build_configs(a: &OptimizeArgs) -> Result<Vec<WorkerConfig>, Usage> {
    let bounded = a.target_mf.is_some() || a.time_limit.is_some();
    (0..a.workers)
        .map(|i| {
            let seed = a.seed.wrapping_add(i as u64);
            let cfg = match a.algo {
                Algo::Saw => {
                    let default_outer = if bounded { u64::MAX } else { 100 };
                    let mut c = SawConfig::new(
                        a.inner.unwrap_or(8 * a.n as u64),
                        a.outer.unwrap_or(default_outer),
                        seed,
                    );
                    c.target_mf = a.target_mf;
                    c.validate()?;
                    WorkerConfig::Saw(c)
                }
                Algo::Shc => {
                    let mut c = ShcConfig::for_length(a.n, seed);
                    if let Some(q) = a.quake {
                        c.quake_size = q;
                    }
                    c.step_threshold = a.steps;
                    c.target_mf = a.target_mf;
                    if let Some(v) = a.accept_current_improving {
                        c.accept_current_improving = v;
                    }
                    c.validate()?;
                    WorkerConfig::Shc(c)
                }
            };
            Ok(cfg)
        })
        .collect()
}

fn validate_optimize(a: &OptimizeArgs) -> Result<(), Usage> {
    check_n(a.n)?;
    if a.workers == 0 {
        return Err(Usage("--workers must be at least 1".into()));
    }
    match a.algo {
        Algo::Saw => {
            if a.quake.is_some() || a.steps.is_some() || a.accept_current_improving.is_some() {
                return Err(Usage(
                    "--quake, --steps and --accept-current-improving apply to --algo shc only".into(),
                ));
            }
        }
        Algo::Shc => {
            if a.inner.is_some() || a.outer.is_some() {
                return Err(Usage("--inner and --outer apply to --algo saw only".into()));
            }
            if a.steps.is_none() && a.target_mf.is_none() && a.time_limit.is_none() {
                return Err(Usage(
                    "--algo shc needs at least one of --steps, --target-mf, --time-limit".into(),
                ));
            }
        }
    }
    if let Some(t) = a.time_limit {
        if !(t.is_finite() && t > 0.0) {
            return Err(Usage("--time-limit must be a positive number of seconds".into()));
        }
    }
    if let Some(t) = a.target_mf {
        if !(t.is_finite() && t > 0.0) {
            return Err(Usage("--target-mf must be positive".into()));
        }
    }
    Ok(())
}

fn log_path(a: &OptimizeArgs) -> Option<PathBuf> {
    a.log.clone().or_else(|| {
        std::env::var_os(LOG_DIR_ENV).map(|dir| PathBuf::from(dir).join("runs.jsonl"))
    })
}

fn optimize(a: OptimizeArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    validate_optimize(&a)?;
    let configs = build_configs(&a)?;
    let n = a.n;
    let stop = Arc::new(AtomicBool::new(false));
    let control = RunControl {
        deadline: a
            .time_limit
            .map(|t| Instant::now() + Duration::from_secs_f64(t)),
        stop: Some(stop.clone()),
    };
    let algo = match a.algo {
        Algo::Saw => "saw",
        Algo::Shc => "shc",
    };
    let _ = writeln!(out, "optimize n={n} algo={algo} workers={} seed={}", a.workers, a.seed);

    let (tx, rx) = mpsc::channel::<Event>();
    let mut records: Vec<Option<RunRecord>> = vec![None; configs.len()];
    let mut failures = Vec::new();
    thread::scope(|s| {
        for (w, cfg) in configs.into_iter().enumerate() {
            let tx = tx.clone();
            let control = control.clone();
            s.spawn(move || {
                let tx_imp = tx.clone();
                let mut on_improve = |imp: &Improvement| {
                    let _ = tx_imp.send(Event::Improved(w, imp.clone()));
                };
                let result = match &cfg {
                    WorkerConfig::Saw(c) => saw_search_with(n, c, &control, &mut on_improve),
                    WorkerConfig::Shc(c) => shc_search_with(n, c, &control, &mut on_improve),
                };
                let _ = tx.send(Event::Done(w, result));
            });
        }
        drop(tx);

        let mut best = i64::MAX;
        for event in rx {
            match event {
                Event::Improved(w, imp) => {
                    if imp.energy < best {
                        best = imp.energy;
                        let _ = writeln!(
                            out,
                            "best worker={w} step={} energy={} mf={:.6} t={:.3}s",
                            imp.step,
                            imp.energy,
                            imp.merit_factor,
                            imp.elapsed.as_secs_f64()
                        );
                        if matches!(a.target_mf, Some(t) if imp.merit_factor >= t) {
                            stop.store(true, Ordering::Relaxed);
                        }
                    }
                }
                Event::Done(w, Ok(rec)) => records[w] = Some(rec),
                Event::Done(w, Err(e)) => failures.push((w, e)),
            }
        }
    });

    if let Some((w, e)) = failures.into_iter().next() {
        let _ = writeln!(err, "worker {w} failed: {e}");
        return Err(Usage(e.to_string()));
    }
    let records: Vec<RunRecord> = records.into_iter().flatten().collect();
    if let Some(path) = log_path(&a) {
        for r in &records {
            if let Err(e) = write_run_record(&path, r) {
                let _ = writeln!(err, "could not write run log: {e}");
            }
        }
    }
    for (w, r) in records.iter().enumerate() {
        let _ = writeln!(
            out,
            "worker={w} seed={} energy={} mf={:.6} steps={} quakes={} time={:.3}s",
            r.seed, r.best_energy, r.best_mf, r.steps, r.quakes, r.wall_time
        );
    }
    let best = records
        .iter()
        .min_by_key(|r| r.best_energy)
        .expect("at least one worker");
    let _ = writeln!(
        out,
        "result n={} energy={} mf={:.6} seed={} half_hex={}",
        best.n, best.best_energy, best.best_mf, best.seed, best.best_half_hex
    );
    match a.target_mf {
        Some(t) if best.best_mf >= t => {
            let _ = writeln!(out, "target {t} met");
            Ok(EXIT_OK)
        }
        Some(t) => {
            let _ = writeln!(out, "target {t} not met");
            Ok(EXIT_TARGET_UNMET)
        }
        None => Ok(EXIT_OK),
    }
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> CmdResult {
    if a.n < 2 {
        return Err(Usage("n must be at least 2".into()));
    }
    let seq = decode_hex(&a.hex, a.n)?;
    let skew = is_skew_symmetric(&seq);
    let r = score(&seq)?;
    let _ = writeln!(out, "n {}", r.n);
    let _ = writeln!(out, "skew-symmetric {}", if skew { "yes" } else { "no" });
    let _ = writeln!(out, "energy {}", r.energy);
    let _ = writeln!(out, "MF {:.6}", r.merit_factor);
    let _ = writeln!(out, "PSL {}", r.psl);
    Ok(EXIT_OK)
}

fn exhaustive(a: ExhaustiveArgs, out: &mut dyn Write) -> CmdResult {
    if a.l > MAX_EXHAUSTIVE_HALF_LEN {
        return Err(Usage(format!(
            "--l {} refused, the limit is {MAX_EXHAUSTIVE_HALF_LEN}",
            a.l
        )));
    }
    let r = exhaustive_best(a.l)?;
    let exact = r.exact_mf();
    let _ = writeln!(out, "n {}", r.n);
    let _ = writeln!(out, "best energy {}", r.best_energy);
    let _ = writeln!(out, "MF {:.10} ({}/{})", r.best_mf, exact.numer(), exact.denom());
    let _ = writeln!(out, "optimal sequences with b0=+1: {}", r.optimal_halves.len());
    for s in r.optimal_sequences().take(16) {
        let text: String = s
            .as_slice()
            .iter()
            .map(|&b| if b > 0 { '+' } else { '-' })
            .collect();
        let _ = writeln!(out, "{text} hex {}", encode_hex(s.as_slice()));
    }
    Ok(EXIT_OK)
}

/// Mean nanoseconds per call of the derivative and of the fused flip.
fn time_kernels(n: usize, reps: u64) -> (f64, f64) {
    let l = n / 2;
    let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
    let state = FlipState::new(SkewSymmetricSequence::random_with(l, &mut rng).unwrap());
    let qs: Vec<usize> = (0..reps).map(|_| rng.gen_range(0..l)).collect();

    let seq = state.sequence().as_slice();
    let started = Instant::now();
    let mut sink = 0i64;
    for &q in &qs {
        sink = sink.wrapping_add(derivative_raw(q, seq, state.sidelobes().values()));
    }
    let deriv = started.elapsed().as_nanos() as f64 / reps as f64;
    std::hint::black_box(sink);

    let mut work = state;
    let started = Instant::now();
    for &q in &qs {
        sink = sink.wrapping_add(work.flip(FlipIndex::new_unchecked(q)));
    }
    let flip = started.elapsed().as_nanos() as f64 / reps as f64;
    std::hint::black_box(sink);
    (deriv, flip)
}

fn bench(a: BenchArgs, out: &mut dyn Write) -> CmdResult {
    if a.reps == 0 {
        return Err(Usage("--reps must be at least 1".into()));
    }
    if a.n_list.is_empty() {
        return Err(Usage("--n-list is empty".into()));
    }
    for &n in &a.n_list {
        check_n(n)?;
    }
    let _ = writeln!(out, "{:>8} {:>16} {:>16}", "n", "derivative ns/op", "flip ns/op");
    let mut timings = Vec::new();
    for &n in &a.n_list {
        let (d, f) = time_kernels(n, a.reps);
        timings.push((n, d));
        let _ = writeln!(out, "{n:>8} {d:>16.1} {f:>16.1}");
    }
    if timings.len() >= 2 {
        let (n0, t0) = timings[0];
        let (n1, t1) = timings[timings.len() - 1];
        let _ = writeln!(
            out,
            "linearity: time ratio {:.2} for length ratio {:.2}",
            t1 / t0,
            n1 as f64 / n0 as f64
        );
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "{:<8} {:<14} {:<14}", "n", "tau table", "sidelobe array");
    for (n, tau, side) in memory_table() {
        let _ = writeln!(out, "{n:<8} {tau:<14} {side:<14}");
    }
    Ok(EXIT_OK)
}

fn estimate(a: EstimateArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    check_n(a.n)?;
    let t = time_estimate(a.n);
    let _ = writeln!(out, "n {}", a.n);
    let _ = writeln!(out, "Q(fit) {}", quake_schedule(a.n));
    match table_quake(a.n) {
        Some(q) => {
            let _ = writeln!(out, "Q(table) {q}");
        }
        None => {
            let _ = writeln!(out, "Q(table) -");
        }
    }
    let _ = writeln!(out, "T {:.1} s ({:.2} h)", t.seconds, t.seconds / 3600.0);
    if t.clamped() {
        let _ = writeln!(
            err,
            "warning: fit negative ({:.1} s), clamped to 0",
            t.raw
        );
        let _ = writeln!(out, "note: fit negative ({:.1} s), clamped", t.raw);
    }
    Ok(EXIT_OK)
}

fn schedule(a: ScheduleArgs, out: &mut dyn Write) -> CmdResult {
    for &n in &a.n_list {
        check_n(n)?;
    }
    export_schedule_csv(&a.out, a.n_list.iter().copied())?;
    let _ = writeln!(out, "wrote {} rows to {}", a.n_list.len(), a.out.display());
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("skewmf").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn optimize_trivial_length() {
        let (code, out, _) = call(&["optimize", "--n", "3", "--algo", "shc", "--target-mf", "4.5"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("mf=4.500000"));
        assert!(out.contains("target 4.5 met"));
    }

    #[test]
    fn optimize_usage_errors() {
        let (code, _, err) = call(&["optimize", "--n", "4", "--target-mf", "3"]);
        assert_eq!(code, 2);
        assert!(err.contains("n must be odd"));
        let (code, _, _) = call(&["optimize", "--n", "5", "--algo", "tabu"]);
        assert_eq!(code, 2);
        let (code, _, _) = call(&["optimize", "--n", "5", "--algo", "saw", "--quake", "2"]);
        assert_eq!(code, 2);
        let (code, _, _) = call(&["optimize", "--n", "5", "--algo", "shc", "--inner", "2"]);
        assert_eq!(code, 2);
        let (code, _, _) = call(&["optimize", "--n", "5", "--algo", "shc"]);
        assert_eq!(code, 2);
        let (code, _, _) = call(&["optimize", "--n", "5", "--steps", "3", "--workers", "0"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn optimize_unmet_target_exits_1() {
        let (code, out, _) = call(&[
            "optimize", "--n", "21", "--algo", "shc", "--steps", "3", "--target-mf", "50",
        ]);
        assert_eq!(code, 1, "{out}");
        assert!(out.contains("not met"));
    }

    #[test]
    fn optimize_writes_log() {
        let dir = tempfile::tempdir().unwrap();
        let log = dir.path().join("runs.jsonl");
        let (code, out, _) = call(&[
            "optimize", "--n", "31", "--algo", "saw", "--inner", "50", "--outer", "3",
            "--workers", "2", "--log", log.to_str().unwrap(),
        ]);
        assert_eq!(code, 0, "{out}");
        let read = crate::seqio::read_run_records(&log).unwrap();
        assert_eq!(read.records.len(), 2);
        assert_eq!(read.records[0].seed, 1);
        assert_eq!(read.records[1].seed, 2);
        let best = read.records.iter().map(|r| r.best_energy).min().unwrap();
        assert!(out.contains(&format!("result n=31 energy={best} ")));
    }

    #[test]
    fn verify_small() {
        let (code, out, _) = call(&["verify", "--hex", "6", "--n", "3"]);
        assert_eq!(code, 0);
        assert!(out.contains("skew-symmetric yes"));
        assert!(out.contains("energy 1\n"));
        assert!(out.contains("MF 4.500000"));
        let (code, _, _) = call(&["verify", "--hex", "xyz", "--n", "3"]);
        assert_eq!(code, 2);
        let (code, _, _) = call(&["verify", "--hex", "ff", "--n", "3"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn exhaustive_cmd() {
        let (code, out, _) = call(&["exhaustive", "--l", "6"]);
        assert_eq!(code, 0);
        assert!(out.contains("MF 14.0833333333 (169/12)"));
        assert!(out.contains("+++++--++-+-+"));
        let (_, out, _) = call(&["exhaustive", "--l", "2"]);
        assert!(out.contains("MF 6.25"));
        let (code, _, err) = call(&["exhaustive", "--l", "30"]);
        assert_eq!(code, 2);
        assert!(err.contains("refused"));
    }

    #[test]
    fn estimate_cmd() {
        let (_, out, _) = call(&["estimate", "--n", "100001"]);
        assert!(out.contains("Q(fit) 157"));
        assert!(out.contains("Q(table) 160"));
        assert!(out.contains("T 17957.6 s"));
        let (_, out, _) = call(&["estimate", "--n", "999"]);
        assert!(out.contains("Q(fit) 1\n"));
        assert!(out.contains("Q(table) 1\n"));
        let (code, _, err) = call(&["estimate", "--n", "10001"]);
        assert_eq!(code, 0);
        assert!(err.contains("fit negative"));
        assert!(err.contains("clamped"));
    }

    #[test]
    fn bench_cmd() {
        let (code, out, _) = call(&["bench", "--n-list", "101,201", "--reps", "50"]);
        assert_eq!(code, 0);
        assert!(out.contains("linearity"));
        assert!(out.contains("99999    37.25 GB       390.62 KB"));
        let (code, _, _) = call(&["bench", "--reps", "0"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn schedule_cmd() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.csv");
        let (code, _, _) = call(&["schedule", "--out", path.to_str().unwrap(), "--n-list", "999,10001"]);
        assert_eq!(code, 0);
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 3);
    }
}
