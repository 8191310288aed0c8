use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// The zero-average antiderivative only exists on mean-zero inputs.
    #[error("function has nonzero mean {mean}; the zero-average primitive is only defined on mean-zero functions")]
    NonZeroMean { mean: f64 },

    #[error(
        "series has a nonzero coefficient at frequency {frequency}, so it does not lie in the tail space of order {k}"
    )]
    NotInTail { k: usize, frequency: i64 },

    #[error("series is not real-tagged")]
    NotReal,

    #[error("band {band} exceeds the allowed maximum {max}")]
    BandTooLarge { band: usize, max: usize },

    #[error("duplicate interpolation node at angle {0}")]
    DuplicateNode(f64),

    #[error("piece {0} is identically zero")]
    IdenticallyZeroPiece(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("serialization: {0}")]
    Serialization(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}
