//! Hex codec, run logs and schedule export.
//!
//! Hex strings hold the sequence as an `n`-bit big-endian integer with
//! leading zero digits omitted. The most significant bit of the `n`-bit window
//! is `b_0`; a one bit is `+1` and a zero bit is `-1`.
//!
//! Run logs are JSON lines, one [`RunRecord`] per line, each carrying a
//! `schema_version`.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::seqcore::Spin;
use crate::solvers::{quake_schedule, time_estimate, RunRecord, SCHEMA_VERSION};

/// Header of the schedule CSV.
pub const SCHEDULE_HEADER: [&str; 3] = ["n", "quake", "est_seconds"];

/// Decodes `hex` into `n` elements. Whitespace is ignored.
pub fn decode_hex(hex: &str, n: usize) -> Result<Vec<Spin>> {
    let mut bits = Vec::with_capacity(hex.len() * 4);
    for (pos, ch) in hex.chars().enumerate() {
        if ch.is_whitespace() {
            continue;
        }
        let d = ch.to_digit(16).ok_or(Error::InvalidHex { ch, pos })?;
        bits.extend((0..4).rev().map(|k| (d >> k) & 1 == 1));
    }
    if bits.is_empty() {
        return Err(Error::EmptyHex);
    }
    let lead = bits.iter().position(|&b| b).unwrap_or(bits.len());
    let bits = &bits[lead..];
    if bits.len() > n {
        return Err(Error::HexOverflow { bits: bits.len(), n });
    }
    let mut out = vec![-1; n - bits.len()];
    out.extend(bits.iter().map(|&b| if b { 1 } else { -1 }));
    Ok(out)
}

/// Inverse of [`decode_hex`]; all-minus sequences encode as `"0"`.
pub fn encode_hex(seq: &[Spin]) -> String {
    let pad = (4 - seq.len() % 4) % 4;
    let bits = std::iter::repeat(false)
        .take(pad)
        .chain(seq.iter().map(|&b| b > 0))
        .collect::<Vec<_>>();
    let digits: String = bits
        .chunks(4)
        .map(|c| {
            let d = c.iter().fold(0u32, |acc, &b| (acc << 1) | b as u32);
            char::from_digit(d, 16).unwrap()
        })
        .collect();
    let trimmed = digits.trim_start_matches('0');
    if trimmed.is_empty() {
        "0".to_string()
    } else {
        trimmed.to_string()
    }
}

/// Appends one record as a JSON line.
pub fn write_run_record(path: impl AsRef<Path>, record: &RunRecord) -> Result<()> {
    let path = path.as_ref();
    let mut line = serde_json::to_string(record)?;
    line.push('\n');
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| Error::io(path, e))?;
    file.write_all(line.as_bytes())
        .map_err(|e| Error::io(path, e))
}

/// A line of a run log that could not be read.
#[derive(Debug)]
pub struct LineError {
    /// One-based line number.
    pub line: usize,
    pub error: Error,
}

/// Everything readable from a run log.
#[derive(Debug, Default)]
pub struct RunLog {
    pub records: Vec<RunRecord>,
    pub errors: Vec<LineError>,
}

fn parse_line(line: &str) -> Result<RunRecord> {
    let value: serde_json::Value = serde_json::from_str(line)?;
    let version = value
        .get("schema_version")
        .and_then(|v| v.as_u64())
        .ok_or_else(|| Error::InvalidConfig("missing schema_version".into()))?;
    if version != SCHEMA_VERSION as u64 {
        return Err(Error::SchemaVersion(version as u32));
    }
    Ok(serde_json::from_value(value)?)
}

/// Reads every record; bad lines are reported alongside the good ones.
/// A missing file reads as an empty log.
pub fn read_run_records(path: impl AsRef<Path>) -> Result<RunLog> {
    let path = path.as_ref();
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(RunLog::default()),
        Err(e) => return Err(Error::io(path, e)),
    };
    let mut log = RunLog::default();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        match parse_line(&line) {
            Ok(r) => log.records.push(r),
            Err(error) => log.errors.push(LineError { line: i + 1, error }),
        }
    }
    Ok(log)
}

/// Writes `n,quake,est_seconds` rows for each length.
pub fn export_schedule_csv(
    path: impl AsRef<Path>,
    lengths: impl IntoIterator<Item = usize>,
) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_schedule_csv(file, lengths)
}

pub fn write_schedule_csv<W: Write>(
    out: W,
    lengths: impl IntoIterator<Item = usize>,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SCHEDULE_HEADER)?;
    for n in lengths {
        w.write_record([
            n.to_string(),
            quake_schedule(n).to_string(),
            format!("{:.4}", time_estimate(n).seconds),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}
