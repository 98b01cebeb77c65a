use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("invalid data: {0}")]
    Invalid(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search bound exceeded before a decision was reached")]
    BoundExceeded,

    #[error("presentation has no order oracle")]
    MissingOracle,

    #[error("operation requires a strict-state cone")]
    NotStrictState,

    #[error("operation is undefined on the purely infinite model")]
    PurelyInfinite,

    #[error("class does not belong to this model: {0}")]
    ModelMismatch(String),

    #[error("stage {stage} is below the first admissible stage {first}")]
    StageBelowStart { stage: u32, first: u32 },
}

impl Error {
    pub(crate) fn dim(expected: usize, found: usize) -> Self {
        Error::DimensionMismatch { expected, found }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
