use std::path::PathBuf;

/// Errors produced by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("half sequence is empty")]
    EmptyHalf,
    #[error("sequence length {0} is too short, need an odd length of at least 3")]
    TooShort(usize),
    #[error("n must be odd, got {0}")]
    EvenLength(usize),
    #[error("element {value} at index {index} is not -1 or +1")]
    InvalidElement { index: usize, value: i64 },
    #[error("sequence is not skew-symmetric")]
    NotSkewSymmetric,
    #[error("half-length must be at least 1")]
    ZeroHalfLength,
    #[error("flip index {q} out of range, must be below {half_len}")]
    FlipOutOfRange { q: usize, half_len: usize },
    #[error("sidelobe array has length {got}, expected {expected}")]
    SidelobeLength { got: usize, expected: usize },
    #[error("sidelobe array has zero energy, which is impossible for n >= 2")]
    ZeroEnergy,
    #[error("half-length {0} is too large for exhaustive search (max {max})", max = crate::oracle::MAX_EXHAUSTIVE_HALF_LEN)]
    ExhaustiveTooLarge(usize),
    #[error("invalid hex character {ch:?} at position {pos}")]
    InvalidHex { ch: char, pos: usize },
    #[error("hex string is empty")]
    EmptyHex,
    #[error("hex value needs {bits} bits, which does not fit in n = {n}")]
    HexOverflow { bits: usize, n: usize },
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
    #[error("unsupported run log schema version {0}")]
    SchemaVersion(u32),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
