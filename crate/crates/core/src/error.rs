use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: input is not valid UTF-8")]
    InvalidUtf8 { path: PathBuf, line: usize },

    #[error("{path}:{line}: {message}")]
    MalformedLine {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error("invalid tokenizer model: {0}")]
    InvalidModel(String),

    #[error("invalid morphology resource: {0}")]
    InvalidResource(String),

    #[error("cannot encode symbol {symbol:?}: not in vocabulary and the model has no unknown token")]
    UnknownSymbol { symbol: String },

    #[error("record {record_id}: {source}")]
    Record {
        record_id: String,
        #[source]
        source: Box<Error>,
    },

    #[error("undefined metric: {0}")]
    UndefinedMetric(String),

    #[error("undefined correlation: {0}")]
    UndefinedCorrelation(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid manifest: {0}")]
    Manifest(String),

    #[error("tokenizer {name}: {source}")]
    Tokenizer {
        name: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn for_record(self, record_id: &str) -> Self {
        Error::Record {
            record_id: record_id.to_string(),
            source: Box::new(self),
        }
    }

    pub(crate) fn for_tokenizer(self, name: &str) -> Self {
        Error::Tokenizer {
            name: name.to_string(),
            source: Box::new(self),
        }
    }
}
