use thiserror::Error;

/// Errors raised by algebra construction, catoid analysis and convolution.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An operation needs a capability the value algebra does not provide.
    #[error("capability error: {0}")]
    Capability(String),

    /// The catoid fails one of the Möbius conditions (or a length computation
    /// did not terminate within the universe).
    #[error("{0}")]
    Moebius(String),

    /// Text input could not be parsed.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A function lies outside the subspace an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),

    /// Two functions or algebras that must agree do not.
    #[error("mismatch: {0}")]
    Mismatch(String),

    /// An element is not part of the model universe.
    #[error("unknown element: {0}")]
    UnknownElement(String),

    /// Invalid configuration (unknown model, algebra or suite name).
    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
