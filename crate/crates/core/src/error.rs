use thiserror::Error;

/// Errors raised across the engine.
///
/// Every variant is cheap to clone so that cached results (stabilizer
/// chains in particular) can hand the same failure to every caller.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("not a Latin square: {0}")]
    NotLatin(String),

    #[error("table has no neutral element")]
    NoNeutral,

    #[error("{what} exceeds cap of {limit}")]
    CapExceeded { what: &'static str, limit: u128 },

    #[error("not an abelian group: {0}")]
    NotAbelianGroup(String),

    #[error("{name} expects {expected} argument(s), got {got}")]
    ArityMismatch {
        name: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("element {element} out of range for order {order}")]
    OutOfRange { element: usize, order: usize },

    #[error("subset is not a subloop")]
    NotSubloop,

    #[error("subloop is not normal")]
    NotNormal,

    #[error("normal subloop is not abelian in the loop: {0}")]
    NotAbelianIn(String),

    #[error("invalid cocycle: {}", .0.join("; "))]
    CocycleInvalid(Vec<String>),

    #[error("extension does not have neutral element at ({0}, 1)")]
    NotNeutralAt(usize),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
