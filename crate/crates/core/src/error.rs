use thiserror::Error;

/// Errors produced by group construction, queries, and the arithmetic layer.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("empty generator list: an explicit degree is required for the identity group")]
    EmptyGenerators,

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("product property fails: |A|·|B|/|A∩B| = {product} but |G| = {group}")]
    ProductProperty { product: String, group: String },

    #[error("resource budget exceeded: {what} needs {needed}, limit {limit}")]
    Budget {
        what: &'static str,
        needed: String,
        limit: String,
    },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown group: {0}")]
    UnknownGroup(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn budget(what: &'static str, needed: impl ToString, limit: impl ToString) -> Self {
        Error::Budget {
            what,
            needed: needed.to_string(),
            limit: limit.to_string(),
        }
    }

    /// Stable machine-readable code for the error kind.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DegreeMismatch { .. } => "degree_mismatch",
            Error::EmptyGenerators => "empty_generators",
            Error::InvalidPermutation(_) => "invalid_permutation",
            Error::NotASubgroup(_) => "not_a_subgroup",
            Error::ProductProperty { .. } => "product_property",
            Error::Budget { .. } => "budget_exceeded",
            Error::Parse { .. } => "parse_error",
            Error::UnknownGroup(_) => "unknown_group",
            Error::InvalidParameters(_) => "invalid_parameters",
            Error::Precondition(_) => "precondition",
            Error::TheoremViolation(_) => "theorem_violation",
            Error::Io(_) => "io_error",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
