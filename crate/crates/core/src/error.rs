use std::fmt;

use thiserror::Error;

use crate::sigraph::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field size {0} exceeds the supported maximum of 65536")]
    TooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields (q={left} and q={right})")]
    FieldMismatch { left: u32, right: u32 },
    #[error("element {rep} is not in F_{q}")]
    InvalidElement { rep: u32, q: u32 },
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("budget exceeded for {what}: needs {needed}, limit {limit}")]
    BudgetExceeded {
        what: &'static str,
        needed: String,
        limit: String,
    },
    #[error("{0}")]
    Parse(ParseError),
    #[error("invalid instance: {}", list_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("block of size {size} is too small, need at least {min}")]
    TooSmall { size: usize, min: usize },
    #[error("minimum distance {found} is below the required {required}")]
    DistanceTooSmall { found: usize, required: usize },
    #[error("no correction of support at most {max_support} matches the syndrome")]
    NoSolution { max_support: usize },
    #[error("demanded symbol cannot be extracted consistently")]
    Inconsistent,
    #[error("receiver {}: demand row lies in the span of the interference rows", .receiver + 1)]
    Degenerate { receiver: usize },
    #[error("instance is not unipartite (requires m = n and f(i) = i)")]
    NotUnipartite,
    #[error("matrix is not a valid generator: receiver {} cannot separate difference {z}", .receiver + 1)]
    InvalidGenerator { receiver: usize, z: String },
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
}

fn list_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

/// Diagnostic for a malformed instance or generator document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub field: Option<String>,
    pub message: String,
}

impl ParseError {
    pub fn field(field: impl Into<String>, message: impl Into<String>) -> Self {
        ParseError {
            line: None,
            column: None,
            field: Some(field.into()),
            message: message.into(),
        }
    }

    pub fn message(message: impl Into<String>) -> Self {
        ParseError {
            line: None,
            column: None,
            field: None,
            message: message.into(),
        }
    }
}

impl From<serde_json::Error> for ParseError {
    fn from(e: serde_json::Error) -> Self {
        ParseError {
            line: Some(e.line()),
            column: Some(e.column()),
            field: None,
            message: e.to_string(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error")?;
        if let Some(field) = &self.field {
            write!(f, " in `{field}`")?;
        }
        if let (Some(l), Some(c)) = (self.line, self.column) {
            write!(f, " at line {l} column {c}")?;
        }
        write!(f, ": {}", self.message)
    }
}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e)
    }
}

impl Error {
    pub(crate) fn budget(what: &'static str, needed: impl ToString, limit: impl ToString) -> Self {
        Error::BudgetExceeded {
            what,
            needed: needed.to_string(),
            limit: limit.to_string(),
        }
    }
}
