use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid support set: {0}")]
    InvalidSupport(String),
    #[error("invalid window [{lo},{hi}]")]
    InvalidWindow { lo: i64, hi: i64 },
    #[error("weight {weight} is not dominant on {support}")]
    NotDominant { weight: String, support: String },
    #[error("support {0} is not an integer interval")]
    NotInterval(String),
    #[error("action produced index {index} outside window [{lo},{hi}]")]
    WindowOverflow { index: i64, lo: i64, hi: i64 },
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("decomposition did not stabilize: {0}")]
    StabilizationFailure(String),
    #[error("character bookkeeping failed: {0}")]
    CharacterMismatch(String),
    #[error("independent computations disagree: {0}")]
    OracleMismatch(String),
    #[error("partition with {len} rows does not fit rank {rank}")]
    RankTooSmall { len: usize, rank: usize },
    #[error("summands of a direct sum must share one level, found {0:?}")]
    MixedLevel(Vec<u32>),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
