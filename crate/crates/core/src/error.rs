//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum FchqError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("field contains non-finite values: {0}")]
    NonFinite(String),
    #[error("spectral leak: discarded imaginary part {ratio:.3e} exceeds 1e-10 of field magnitude")]
    SpectralLeak { ratio: f64 },
    #[error("boundary contamination: field magnitude {ratio:.3e} of max in the outer shell")]
    BoundaryContamination { ratio: f64 },
    #[error("dilation factor {t} outside [{lo}, {hi}]")]
    DilationRange { t: f64, lo: f64, hi: f64 },
    #[error("no Pohozaev time: D(u) = {dterm:.6e} <= 0")]
    NoPohozaevTime { dterm: f64 },
    #[error("seed search failed; D values tried: {tried:?}")]
    SeedFailure { tried: Vec<f64> },
    #[error("nonlinearity overflow at t = {t:.6e}")]
    Overflow { t: f64 },
    #[error("unknown nonlinearity model: {0}")]
    UnknownModel(String),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("decay window too small: {shells} shells (need >= 8)")]
    WindowTooSmall { shells: usize },
    #[error("nonpositive tail in decay window")]
    NegativeTail,
    #[error("path not admissible: {0}")]
    NotAdmissible(String),
    #[error("oracle input too large: {points} points exceeds cap {cap}")]
    TooLarge { points: usize, cap: usize },
    #[error("oracle does not support dimension {dim}")]
    UnsupportedDim { dim: usize },
    #[error("snapshot i/o: {0}")]
    Snapshot(String),
}

pub type Result<T> = std::result::Result<T, FchqError>;
