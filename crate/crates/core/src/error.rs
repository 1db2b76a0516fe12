use thiserror::Error;

#[derive(Debug, Error)]
pub enum HsumError {
    #[error("invalid index vector: {0}")]
    InvalidIndex(String),
    #[error("weight {0} is outside the supported range 1..=4")]
    WeightOutOfRange(u32),
    #[error("argument {z} lies within {distance:e} of the pole at {pole}")]
    PoleProximity { z: String, pole: i64, distance: f64 },
    #[error("precision exhausted: estimated error {estimate:e} exceeds the bound {bound:e}")]
    PrecisionExhausted { estimate: f64, bound: f64 },
    #[error("invalid evaluation context: {0}")]
    InvalidContext(String),
    #[error("coefficient reconstruction failed for {column}: {reason}")]
    ReconstructionFailed { column: String, reason: String },
    #[error("verification failed: max residual {max_residual:e} above tolerance {tolerance:e}")]
    VerificationFailed { max_residual: f64, tolerance: f64 },
    #[error("linear system is ill conditioned: {0}")]
    IllConditioned(String),
    #[error("no bilinear identity available for {0}")]
    MissingBilinear(String),
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown symbol {symbol:?} at byte {position}")]
    UnknownSymbol { position: usize, symbol: String },
    #[error("corpus validation failed: {0}")]
    Validation(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("structured format error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = HsumError> = std::result::Result<T, E>;
