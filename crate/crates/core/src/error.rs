use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator index {index} out of range for a presentation on {rank} generators")]
    GeneratorOutOfRange { index: u32, rank: usize },

    #[error("duplicate generator name {0:?}")]
    DuplicateGenerator(String),

    #[error("invalid generator name {0:?}")]
    InvalidGeneratorName(String),

    #[error("line {line}: {message} (at token {token:?})")]
    Parse {
        line: usize,
        token: String,
        message: String,
    },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error(
        "group is not perfect (abelianization {0}); weight check requires trivial abelianization"
    )]
    NotPerfect(String),

    #[error("presentation has no marked {0:?} element")]
    MissingMarked(String),

    #[error("point {0} does not lie in the open unit disk")]
    OutsideDisk(String),

    #[error("coset table check failed: {0}")]
    InvalidTable(String),

    #[error("certificate does not re-validate: {0}")]
    InvalidCertificate(String),
}

impl Error {
    pub(crate) fn params(msg: impl Into<String>) -> Self {
        Error::InvalidParameters(msg.into())
    }
}
