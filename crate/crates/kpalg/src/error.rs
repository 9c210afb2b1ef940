use thiserror::Error;

/// Coarse failure categories, used by the CLI to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Category {
    /// Malformed input text (expression or config file syntax).
    Parse,
    /// Well-formed input that does not make sense (unknown generator,
    /// shape mismatch, localization at zero, ...).
    Semantic,
    /// An exact identity that was required to hold does not.
    Verification,
    /// A configured budget or size limit was exceeded.
    Resource,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },

    #[error("unknown identifier `{name}` at line {line}, column {col}")]
    UnknownIdentifier {
        name: String,
        line: usize,
        col: usize,
    },

    #[error("config error at line {line}: {msg}")]
    Config { line: usize, msg: String },

    #[error("{0}")]
    Semantic(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn semantic(msg: impl Into<String>) -> Self {
        Error::Semantic(msg.into())
    }

    pub fn category(&self) -> Category {
        match self {
            Error::Syntax { .. } | Error::UnknownIdentifier { .. } | Error::Config { .. } => {
                Category::Parse
            }
            Error::Semantic(_) | Error::Io(_) => Category::Semantic,
            Error::Verification(_) => Category::Verification,
            Error::Resource(_) => Category::Resource,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
