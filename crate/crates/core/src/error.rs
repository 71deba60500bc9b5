use thiserror::Error;

/// Errors produced across the simulator.
#[derive(Debug, Error)]
pub enum Error {
    /// A network or game specification violates its invariants.
    #[error("invalid specification: {0}")]
    Spec(String),

    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },

    /// A caller broke an operation's precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("integration failed at t={t}: {reason}")]
    Integration { t: f64, reason: String },

    /// Bad configuration value; `key` is the dotted config path.
    #[error("config `{key}`: {constraint}")]
    Config { key: String, constraint: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn spec(msg: impl Into<String>) -> Self {
        Error::Spec(msg.into())
    }

    pub(crate) fn config(key: impl Into<String>, constraint: impl Into<String>) -> Self {
        Error::Config {
            key: key.into(),
            constraint: constraint.into(),
        }
    }
}
