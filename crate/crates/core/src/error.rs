use thiserror::Error;

/// One violated input invariant, with a path to the offending field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Issue {
    pub path: String,
    pub message: String,
}

impl Issue {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        Issue {
            path: path.into(),
            message: message.into(),
        }
    }
}

impl std::fmt::Display for Issue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.path.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

fn join(issues: &[Issue]) -> String {
    issues
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid query: {}", join(.0))]
    InvalidQuery(Vec<Issue>),

    #[error("mode {mode} unsupported: {reason}")]
    ModeUnsupported { mode: &'static str, reason: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("configuration is not generic (j = {j}, expected {expected})")]
    NotGeneric { j: usize, expected: usize },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid ordering pair: {0}")]
    InvalidPair(String),

    #[error("time {0} outside [0, 1]")]
    TimeOutOfRange(f64),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    /// True for errors caused by the caller's input rather than by the planner.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. } | Error::InvalidQuery(_) | Error::ModeUnsupported { .. } | Error::DimensionMismatch { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
