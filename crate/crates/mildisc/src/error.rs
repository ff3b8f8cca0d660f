use std::path::PathBuf;

/// Crate-wide error type. `exit_code` defines the mapping used by the
/// command-line binary: 2 for bad parameters, 3 for input problems,
/// 4 for broken internal invariants.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Param(String),

    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error in {path}{}: {msg}", line.map(|l| format!(" (line {l})")).unwrap_or_default())]
    Parse {
        path: PathBuf,
        line: Option<usize>,
        msg: String,
    },

    #[error("malformed JSON in {path}: {msg}")]
    Json { path: PathBuf, msg: String },

    #[error("dataset has no data rows")]
    EmptyDataset,

    #[error("unusable input: {0}")]
    Unusable(String),

    #[error("scheme does not match dataset: {0}")]
    Mismatch(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Param(_) => 2,
            Error::Io { .. }
            | Error::Parse { .. }
            | Error::Json { .. }
            | Error::EmptyDataset
            | Error::Unusable(_)
            | Error::Mismatch(_) => 3,
            Error::Internal(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
