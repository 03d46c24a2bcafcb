use thiserror::Error;

/// Failure classes shared by every module. The CLI maps them onto exit codes
/// 1, 2 and 3 respectively.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or inconsistent input (bad shapes, unknown labels, wrong
    /// degrees, window too small, ...).
    #[error("input error: {0}")]
    Input(String),
    /// Input is well formed but does not describe a model the invariants can be
    /// read off from (missing towers, congruence failure, unavailable data).
    #[error("model invalid: {0}")]
    ModelInvalid(String),
    /// An internal consistency check failed.
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn model(msg: impl Into<String>) -> Self {
        Error::ModelInvalid(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Input(_) => "input",
            Error::ModelInvalid(_) => "model-invalid",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
