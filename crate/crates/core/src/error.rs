use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("width {0} is outside the supported range")]
    WidthOutOfRange(usize),

    #[error("value {value} does not fit in {width} rows")]
    PointOutOfRange { value: u64, width: usize },

    #[error("zero vector where a projective point was required")]
    ZeroPoint,

    #[error("duplicate point {0}")]
    DuplicatePoint(u32),

    #[error("{0} elements exceeds the supported maximum of 64")]
    TooManyElements(usize),

    #[error("unknown element label `{0}`")]
    UnknownLabel(String),

    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),

    #[error("matroid is not simple")]
    NotSimple,

    #[error("unknown catalog name `{0}`")]
    UnknownName(String),

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error("3-sum precondition violated: {0}")]
    ThreeSum(String),

    #[error("database has no stratum rank={rank} size={size}")]
    MissingStratum { rank: usize, size: usize },

    #[error("incompatible database headers: {0}")]
    IncompatibleHeaders(String),

    #[error("{path}: line {line}: {msg}")]
    Parse { path: String, line: usize, msg: String },

    #[error("{path}: database is truncated; last complete level is {last}")]
    Truncated { path: String, last: String },

    #[error("{path}: {msg}")]
    Format { path: String, msg: String },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
