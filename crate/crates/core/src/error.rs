use thiserror::Error;

/// Errors surfaced at the library boundary.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CdError {
    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("level mismatch: {left} vs {right}")]
    LevelMismatch { left: u32, right: u32 },

    #[error("level {level} exceeds the cap {cap} (pass --allow-large to lift it)")]
    LevelTooLarge { level: u32, cap: u32 },

    #[error("invalid level {level}: {msg}")]
    InvalidLevel { level: u32, msg: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("construction identity failed: {0}")]
    Identity(String),

    #[error("malformed json: {0}")]
    Json(String),
}

impl CdError {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        CdError::Parse {
            pos,
            msg: msg.into(),
        }
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        CdError::Precondition(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, CdError>;
