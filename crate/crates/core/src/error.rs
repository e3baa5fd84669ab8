use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("graph order {order} exceeds the configured maximum of {limit}")]
    SizeLimit { order: usize, limit: usize },

    /// An exact computation was requested beyond the order it is gated to.
    #[error("{what} is limited to order {limit}, got {order}{hint}")]
    Capacity {
        what: &'static str,
        order: usize,
        limit: usize,
        hint: &'static str,
    },

    #[error("no selectable vertex: every degree is zero")]
    NoSelectableVertex,

    #[error("no minimum degree is in scope for n = {n}, k = {k}: the search needs k <= delta, and delta < n/2 once n >= 4k - 5")]
    InfeasibleScope { n: usize, k: usize },

    #[error("the candidate archive is empty")]
    EmptyArchive,

    #[error("parse error at {position}: {message}")]
    Parse { position: String, message: String },

    /// Raised when an accepted graph fails its factor certificate.
    #[error("internal consistency violation: {0}")]
    ConsistencyViolation(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn parse(position: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            position: position.into(),
            message: message.into(),
        }
    }
}
