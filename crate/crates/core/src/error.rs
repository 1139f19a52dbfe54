use thiserror::Error;

/// Errors raised by the counting engine, the algebra core, the expression
/// front-end and the enumeration oracle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("division by the zero fraction")]
    DivisionByZero,

    #[error("empty expression")]
    EmptyInput,

    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },

    #[error("k = {k} exceeds the enumeration cutoff {cutoff}")]
    CutoffExceeded { k: usize, cutoff: usize },

    /// A division the recurrence proves exact left a remainder. This is a bug,
    /// never an input problem.
    #[error("internal arithmetic fault at k = {k}: {what} is not even")]
    InexactDivision { k: usize, what: &'static str },
}

impl Error {
    /// True for faults that indicate a broken invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::InexactDivision { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
