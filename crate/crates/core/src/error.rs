use thiserror::Error;

/// Errors raised by the toolkit. The variants map onto the CLI exit codes:
/// domain and parse errors exit 1, integrity errors exit 2, verification
/// failures exit 3.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid Seifert form: {0}")]
    InvalidSeifert(String),

    /// A Tristram-Levine signature was requested at a root of the Alexander
    /// polynomial. The one-sided limits are reported instead.
    #[error("angle {angle} lies on a jump of the signature function (left value {left}, right value {right})")]
    OnJump { angle: String, left: i64, right: i64 },

    #[error("data integrity error: {0}")]
    Integrity(String),

    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
