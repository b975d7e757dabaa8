use thiserror::Error;

use crate::scalar::Field;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("invalid semigroup: {0}")]
    InvalidSemigroup(String),
    #[error("malformed term: {0}")]
    MalformedTerm(String),
    #[error("unbound variable x{0}")]
    UnboundVariable(u32),
    #[error("enumeration would produce {count} terms, above the cap of {cap}")]
    CapExceeded { count: String, cap: usize },
    #[error("rewriting exceeded the step budget of {0}")]
    StepBudgetExceeded(usize),
    #[error("rewrite system is not finitely normalizing: {0}")]
    NotFinitelyNormalizing(String),
    #[error("term is not in normal form: {0}")]
    NotNormal(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("projection used on an ungraded algebra")]
    MissingGrading,
    #[error("invalid grading: {0}")]
    InvalidGrading(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("invalid preset: {0}")]
    InvalidPreset(String),
    #[error("dimension {dim} is above the cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("search space of {0} candidates is too large for exhaustive search; use the random strategy")]
    SearchSpaceTooLarge(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{file}:{line}:{column}: {message}")]
    Positioned { file: String, line: usize, column: usize, message: String },
}

impl Error {
    /// Caps and budgets, as opposed to malformed input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::CapExceeded { .. }
                | Error::StepBudgetExceeded(_)
                | Error::DimensionCap { .. }
                | Error::SearchSpaceTooLarge(_)
                | Error::Undecided(_)
        )
    }
}
