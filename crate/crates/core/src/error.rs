use thiserror::Error;

use crate::theory::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },

    #[error("line {line}: {message}")]
    File { line: usize, message: String },

    #[error("invalid theory: {0}")]
    InvalidTheory(ValidationReport),

    #[error("unknown premise id `{0}`")]
    UnknownPremise(String),

    #[error("{0}")]
    Precondition(&'static str),

    #[error("{atoms} atoms exceed the enumeration cap of {cap}")]
    AtomCapExceeded { atoms: usize, cap: usize },

    #[error("more than {cap} linear extensions")]
    ExtensionCapExceeded { cap: usize },

    #[error("{size} premises exceed the subset search budget of {budget}")]
    MusBudgetExceeded { size: usize, budget: usize },

    #[error("{count} arguments exceed the extension search budget of {budget}")]
    ArgumentBudgetExceeded { count: usize, budget: usize },

    #[error("goal `{0}` is not believed")]
    NotBelieved(String),

    #[error("argument extension is ignored: its induced reliability order is cyclic")]
    IgnoredExtension,

    #[error("malformed ATMS: {0}")]
    Atms(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Cap and budget failures, as opposed to bad input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::AtomCapExceeded { .. }
                | Error::ExtensionCapExceeded { .. }
                | Error::MusBudgetExceeded { .. }
                | Error::ArgumentBudgetExceeded { .. }
        )
    }
}
