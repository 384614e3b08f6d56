use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A rule base, variable or inference setting is inconsistent.
    #[error("configuration error: {0}")]
    Config(String),

    /// The caller passed arguments outside an operation's domain.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("schema error: column `{column}` not found in header")]
    MissingColumn { column: String },

    #[error("schema error: {0}")]
    Schema(String),

    /// `line` is the 1-based line in the input, header included.
    #[error("row error at line {line}: {message}")]
    Row { line: u64, message: String },

    #[error("fit error on feature `{feature}`: {message}")]
    Fit { feature: String, message: String },

    #[error("model error in `{field}`: {message}")]
    Model { field: String, message: String },

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

/// Coarse classification used to pick process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Usage,
    Input,
    Model,
    Output,
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn model(field: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Model {
            field: field.into(),
            message: msg.into(),
        }
    }

    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Config(_) | Error::Usage(_) | Error::Fit { .. } => ErrorKind::Usage,
            Error::MissingColumn { .. } | Error::Schema(_) | Error::Row { .. } | Error::Csv(_) => {
                ErrorKind::Input
            }
            Error::Model { .. } | Error::Json(_) => ErrorKind::Model,
            Error::Io(_) => ErrorKind::Output,
        }
    }
}
