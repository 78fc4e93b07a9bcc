use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("vector has {got} entries but the quiver has {expected} vertices")]
    DomainMismatch { expected: usize, got: usize },

    #[error("dimension vector entries must be non-negative (vertex `{0}`)")]
    NegativeDimension(String),

    #[error("entry {value} exceeds the supported magnitude {limit}")]
    EntryTooLarge { value: i64, limit: i64 },

    #[error("quiver must be connected and non-empty")]
    NotConnected,

    #[error("classification routes disagree: form says {form}, shape says {shape}")]
    ClassificationMismatch { form: String, shape: String },

    #[error("matrix of shape {rows}x{cols} is not square")]
    NotSquare { rows: usize, cols: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix is singular: {0}")]
    Singular(String),

    #[error("doubling data mismatch: {0}")]
    DoublingMismatch(String),

    #[error("dimension is unbalanced at the doubled vertex ({minus} vs {plus})")]
    Unbalanced { minus: i64, plus: i64 },

    #[error("the zero dimension vector is not allowed here")]
    ZeroVector,

    #[error("representation is not thin: vertex `{0}` has dimension > 1")]
    NotThin(String),

    #[error("enumeration box of {boxes} points exceeds the cap of {cap}")]
    CapExceeded { boxes: u128, cap: u64 },

    #[error("negative arrow count {count} between local vertices {from} and {to}; the type is not made of stable summands")]
    NegativeArrowCount { from: usize, to: usize, count: i64 },

    #[error("flow search is unbounded: the quiver has an oriented cycle")]
    Unbounded,

    #[error("no degree-1 sections: the moduli space is empty or the weight is not effective")]
    NoSections,

    #[error("witness search exhausted: {0}")]
    WitnessNotFound(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}
