use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("no root in interval")]
    NoRootInInterval,

    #[error("multiple roots in interval")]
    MultipleRootsInInterval,

    #[error("q ≤ 1 for non-unit kind")]
    BaseNotAboveOne,

    #[error("operands belong to different bases")]
    MismatchedBase,

    #[error("the unit base q=1 is not accepted here")]
    UnitBase,

    #[error("digit {digit} exceeds M = {bound}")]
    DigitExceedsBound { digit: String, bound: String },

    #[error("negative input")]
    NegativeInput,

    #[error("division by zero")]
    DivisionByZero,

    /// A named hypothesis of an operation does not hold.
    #[error("{0}")]
    Precondition(String),

    #[error("search space too large")]
    SearchSpaceTooLarge,

    /// Signals a bug: a guaranteed mathematical property failed to hold.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}
