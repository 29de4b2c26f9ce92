use thiserror::Error;

use crate::grading::Degree;

/// What went wrong while parsing a filtration file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// Malformed line (bad token, wrong arity, missing `@`, ...).
    Syntax(String),
    /// A simplex was declared whose facet never appears in the file.
    MissingFace(String),
    /// A simplex enters the filtration strictly before one of its faces.
    Monotonicity(String),
    /// An entry set contains two comparable degrees.
    NonAntichain(String),
}

impl std::fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParseErrorKind::Syntax(m) => write!(f, "syntax error: {m}"),
            ParseErrorKind::MissingFace(m) => write!(f, "missing face: {m}"),
            ParseErrorKind::Monotonicity(m) => write!(f, "monotonicity violation: {m}"),
            ParseErrorKind::NonAntichain(m) => write!(f, "entry set is not an antichain: {m}"),
        }
    }
}

#[derive(Error, Debug)]
pub enum Error {
    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: ParseErrorKind },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("mixed coefficient fields")]
    MixedField,

    #[error("{0} is not a prime below 2^31")]
    NotPrime(u32),

    #[error("invalid field descriptor `{0}` (expected `Fp:<prime>` or `Q`)")]
    BadFieldDescriptor(String),

    #[error("enumeration guard exceeded: {0}")]
    GuardExceeded(String),

    #[error("invalid family: {0}")]
    InvalidFamily(String),

    #[error("invalid vector: {0}")]
    InvalidVector(String),

    #[error("inconsistent rank table: {0}")]
    InconsistentRank(String),

    #[error("expected a one-parameter module (n = 1), got n = {0}")]
    NotOneParameter(usize),

    #[error("degree {0} lies outside the module's box")]
    OutsideBox(Degree),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
