use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The result cannot be represented (exponent overflow).
    #[error("range error: {0}")]
    Range(String),

    /// The input or working precision cannot certify the requested output.
    #[error("precision error: {0}")]
    Precision(String),

    /// The value sits too close to a digit boundary to name the digit.
    #[error("boundary hazard at position {position} (base {base}): fractional part {fraction}")]
    BoundaryHazard {
        position: u64,
        base: u32,
        fraction: String,
    },

    /// A cache file failed to parse or verify. `record` is the zero-based
    /// record line at fault, when one can be named.
    #[error("cache format error{}: {reason}", record.map(|r| format!(" at record {r}")).unwrap_or_default())]
    Format { record: Option<usize>, reason: String },

    #[error("cache kind mismatch: file holds {found}, requested {expected}")]
    KindMismatch { expected: String, found: String },

    /// Two computations that must agree did not.
    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn precision(msg: impl Into<String>) -> Self {
        Error::Precision(msg.into())
    }
}
