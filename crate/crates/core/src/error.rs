use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A caller violated an operation's precondition (shape, arity, membership).
    #[error("contract violation: {0}")]
    Contract(String),

    /// Field or scalar configuration is invalid or inconsistent.
    #[error("configuration error: {0}")]
    Configuration(String),

    /// Random sampling never produced a generic choice.
    #[error("genericity failure: no linear system of parameters found after {attempts} attempts over {field} (field too small?)")]
    Genericity { field: String, attempts: usize },

    /// Two independent routes disagreed; this indicates a bug.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub(crate) fn contract<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Contract(msg.into()))
}
