use thiserror::Error;

/// Errors produced by the library. Matrix positions in messages are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is singular")]
    Singular,

    #[error("polynomial is not monic")]
    NotMonic,

    #[error("expected a polynomial of degree {expected}, found degree {found}")]
    Degree { expected: usize, found: usize },

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("unknown name {0:?}")]
    UnknownName(String),

    #[error("word is too long: more than {0} letters")]
    WordTooLong(usize),

    #[error("exponent overflow")]
    Overflow,

    #[error("matrix entry grew to {0} bits")]
    EntryTooLarge(u64),

    #[error("invalid exponent vector: {0}")]
    InvalidExponents(String),

    #[error("f and g must differ")]
    EqualPolynomials,

    #[error("invalid hypergeometric pair: {0}")]
    InvalidPair(String),

    #[error("invariant antisymmetric forms span a space of dimension {0}, expected 1")]
    FormDimension(usize),

    #[error("invariant form is degenerate")]
    DegenerateForm,

    #[error("Gram matrix is not anti-diagonal: entry ({row},{col}) is {value}")]
    NotAntiDiagonal {
        row: usize,
        col: usize,
        value: String,
    },

    #[error("degenerate basis: {0}")]
    DegenerateBasis(String),

    #[error("matrix is not a unipotent upper-triangular symplectic matrix")]
    NotUnipotent,

    #[error("certificate: {0}")]
    Certificate(String),

    #[error("dataset: {0}")]
    Dataset(String),

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
