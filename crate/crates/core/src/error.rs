use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("graph is disconnected: no path between {0} and {1}")]
    Disconnected(usize, usize),

    #[error("metric dimension exceeds k_max = {k_max}")]
    ExceedsKmax { k_max: usize, explored: u64 },

    #[error("bound not applicable: {0}")]
    InapplicableBound(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("cannot canonicalize: {0}")]
    CannotCanonicalize(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("fraction undefined: {0}")]
    UndefinedFraction(String),

    /// A computed result contradicts a proven statement or a second route.
    #[error("internal consistency fault: {0}")]
    Fault(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
