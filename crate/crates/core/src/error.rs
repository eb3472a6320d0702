//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid config: {0}")]
    InvalidConfig(String),

    #[error("input too short: need at least {min} samples, got {got}")]
    InputTooShort { min: usize, got: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("infeasible geometry: {0}")]
    InfeasibleGeometry(String),

    #[error("degenerate source: {0}")]
    DegenerateSource(String),

    #[error("rank-deficient estimate: {0}")]
    RankDeficient(String),

    #[error("singular system: {0}")]
    Singular(String),

    #[error("MINT condition violated: {0}")]
    MintCondition(String),

    #[error("zero weight mass: {0}")]
    ZeroWeightMass(String),

    #[error("silent signal: {0}")]
    SilentSignal(String),

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("unsupported wav format: {0}")]
    UnsupportedWav(String),

    #[error("sample rate mismatch: expected {expected} Hz, got {got} Hz")]
    SampleRateMismatch { expected: u32, got: u32 },

    #[error("manifest: {0}")]
    Manifest(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("wav: {0}")]
    Wav(#[from] hound::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by malformed or inconsistent inputs rather
    /// than by the filesystem. CLI layers map these to validation exits.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::Io(_) | Error::Wav(_) | Error::Json(_))
    }
}
