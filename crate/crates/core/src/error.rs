use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("point id {id} out of range for {n} points")]
    IndexOutOfRange { id: usize, n: usize },

    #[error("point {id} has a non-finite coordinate")]
    NonFinite { id: usize },

    #[error("points {first} and {second} coincide")]
    DuplicatePoint { first: usize, second: usize },

    #[error("points {first} and {second} share an x-coordinate")]
    DuplicateX { first: usize, second: usize },

    #[error("point {id} is not a vertex of the convex hull; input is not in convex position")]
    NotConvex { id: usize },

    #[error("input is empty")]
    EmptyInput,

    #[error("{n} points exceed the oracle limit of {max}")]
    TooLarge { n: usize, max: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("could not normalize around anchor {anchor}: {reason}")]
    Normalization { anchor: usize, reason: String },

    #[error("instance generation failed: {0}")]
    Generation(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A solver produced output that violates its own postcondition.
    #[error("internal contract violated: {0}")]
    Contract(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Input errors map to exit code 1, contract violations to 2.
    pub fn is_contract(&self) -> bool {
        matches!(self, Error::Contract(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
