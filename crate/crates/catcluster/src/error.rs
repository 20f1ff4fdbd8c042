use thiserror::Error;

/// Errors surfaced by the cluster, root-system and family engines.
///
/// `InvariantViolation` is reserved for conditions that certify an
/// implementation bug (a Laurent division with remainder, a uniqueness
/// breach), never a failure of the underlying mathematics. Callers map it
/// to exit code 2.
#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index} is not an exchangeable node")]
    NotExchangeable { index: u32 },

    #[error("unknown node {index}")]
    UnknownNode { index: u32 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("quiver validation failed: {0}")]
    InvalidQuiver(String),

    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),

    #[error("monomial uses variable {var} outside the family alphabet")]
    AlphabetViolation { var: String },

    #[error("admissible sequence violation at position {position}: condition ({condition})")]
    NotAdmissible { position: i64, condition: u8 },

    #[error("letter {letter} at step {step} is not a sink of the current Q-datum")]
    NotAdapted { letter: u32, step: usize },

    #[error("word is not a reduced expression of the longest element")]
    NotReducedWord,

    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("compatibility of {a} and {b} is indeterminate: fan-walk budget exhausted")]
    Indeterminate { a: String, b: String },

    #[error("internal invariant violation: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
