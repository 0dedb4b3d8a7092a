use std::fmt;

use thiserror::Error;

/// Location of a token or construct in program text.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct SourceSpan {
    /// 1-based line of the first byte.
    pub line: usize,
    /// 1-based column (in characters) of the first byte.
    pub column: usize,
    pub start: usize,
    pub end: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at {span}: {message}")]
    Parse { span: SourceSpan, message: String },

    #[error("semantic error at {span}: {message}")]
    Semantic { span: SourceSpan, message: String },

    #[error("{what} needs {needed}, exceeding the limit of {limit}")]
    CapExceeded {
        what: &'static str,
        needed: u128,
        limit: u128,
    },

    #[error("program is not basic (a rule head is neither elementary nor bot)")]
    NotBasic,

    #[error("program is not positive (it contains negation-as-failure)")]
    NotPositive,

    #[error("program is not basic and positive")]
    NotBasicPositive,

    #[error("program is not monotone")]
    NotMonotone,

    #[error("atom `{0}` has no level in the mapping")]
    UnmappedAtom(String),

    #[error("invalid level mapping: {0}")]
    InvalidLevelMapping(String),

    #[error("invalid construct: {0}")]
    Invalid(String),

    #[error("unknown atom `{0}`")]
    UnknownAtom(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("cannot read {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn cap(what: &'static str, needed: u128, limit: u128) -> Self {
        Error::CapExceeded {
            what,
            needed,
            limit,
        }
    }

    /// Exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Semantic { .. } | Error::UnknownAtom(_) | Error::Io(_) => {
                1
            }
            Error::CapExceeded { .. } => 3,
            _ => 2,
        }
    }
}
