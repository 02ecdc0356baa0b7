//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("scene generation failed: {0}")]
    SceneGen(String),

    #[error("no collision-free start pose found after {attempts} attempts")]
    PlacementFailure { attempts: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("shard version mismatch: found {found}, expected {expected}")]
    ShardVersion { found: u32, expected: u32 },

    #[error("shard truncated: {0}")]
    ShardTruncated(String),

    #[error("shard checksum failure for tensor `{tensor}`")]
    ShardChecksum { tensor: String },

    #[error("shard format error: {0}")]
    ShardFormat(String),

    #[error("training diverged: {0}")]
    Divergence(String),

    #[error("empty evaluation split")]
    EmptySplit,

    #[error("empty episode set")]
    EmptyEpisodeSet,

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
