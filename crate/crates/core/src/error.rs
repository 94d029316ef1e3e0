use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degenerate lattice (zero determinant)")]
    Degenerate,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("unknown lattice name `{0}`")]
    UnknownName(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("lattice is not positive definite")]
    NotPositiveDefinite,
    #[error("lattice is not even")]
    NotEven,
    #[error("signature mismatch: {0}")]
    Signature(String),
    #[error("budget exhausted after {0} isometry tests")]
    BudgetExhausted(u64),
    #[error("no representative could be constructed for genus {0}")]
    NoSeed(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
