use thiserror::Error;

/// Errors raised by the mechanisms, the verifier and the scenario front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Inputs that violate a structural invariant (dimensions, subset
    /// relations, disjointness, containment promises).
    #[error("structural error: {0}")]
    Structural(String),
    /// A size limit of the exact or exhaustive machinery was exceeded.
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    /// An unsupported parameter value.
    #[error("configuration error: {0}")]
    Config(String),
    /// Malformed scenario text. `location` names the offending position.
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn structural(msg: impl Into<String>) -> Error {
    Error::Structural(msg.into())
}
