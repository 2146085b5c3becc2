use alloc::string::String;
use core::fmt;

/// Errors raised by the core library.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Matrix shape violates `1 <= cols <= rows`.
    InvalidShape {
        rows: usize,
        cols: usize,
    },
    /// Entry buffer length does not match the declared shape.
    EntryCount {
        expected: usize,
        found: usize,
    },
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        bound: usize,
    },
    /// The requested computation needs more work than the configured budget.
    BudgetExceeded {
        what: &'static str,
        required: u128,
        budget: u128,
    },
    /// An argument is outside the domain of the operation.
    InvalidArgument(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidShape { rows, cols } => {
                write!(f, "invalid shape {rows}x{cols}: need 1 <= cols <= rows")
            }
            Error::EntryCount { expected, found } => {
                write!(f, "expected {expected} entries, found {found}")
            }
            Error::IndexOutOfRange { what, index, bound } => {
                write!(f, "{what} index {index} out of range 0..{bound}")
            }
            Error::BudgetExceeded { what, required, budget } => {
                write!(f, "{what} needs {required} terms, budget is {budget}")
            }
            Error::InvalidArgument(msg) => f.write_str(msg),
        }
    }
}
