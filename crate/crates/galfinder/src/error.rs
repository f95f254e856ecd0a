use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    /// The caller passed something outside an operation's domain.
    #[error("invalid input: {0}")]
    Input(String),

    /// Text or file contents could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// A newform fixture record violates the schema.
    #[error("schema error in record {label}: {msg}")]
    Schema { label: String, msg: String },

    /// Some polynomial has roots outside the working field.
    #[error("enlarge r: {0}")]
    EnlargeR(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn parse<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse(msg.into()))
}
