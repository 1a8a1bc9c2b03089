use thiserror::Error;

/// Errors raised by the library. Each variant is either a domain error
/// (a violated precondition or validation failure) or a format error
/// (malformed input text); [`Error::is_format`] tells them apart.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("no measurements")]
    NoMeasurements,

    #[error("fault count exceeds measurement count")]
    FaultCountExceeds { faults: usize, measurements: usize },

    #[error("invalid fault range")]
    InvalidFaultRange {
        f_min: usize,
        f_max: usize,
        measurements: usize,
    },

    #[error("not a rough pair")]
    NotRoughPair { levels: usize },

    #[error("invalid interval: {0}")]
    InvalidInterval(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("graded levels not nested at pair ({index}, {next})", next = index + 1)]
    NotNested { index: usize },

    #[error("empty chain")]
    EmptyChain,

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid table: {0}")]
    InvalidTable(String),

    #[error("partition universes differ")]
    UniverseMismatch,

    #[error("not a granular set: refinement fails at pair ({index}, {next})", next = index + 1)]
    NotGranular { index: usize },

    #[error("unknown attribute {0:?}")]
    UnknownAttribute(String),

    #[error("unknown object {0:?}")]
    UnknownObject(String),

    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }

    /// True for malformed-input errors, false for domain errors.
    pub fn is_format(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
