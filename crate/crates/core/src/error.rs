use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: malformed record: {reason}")]
    MalformedLine {
        path: PathBuf,
        line: usize,
        reason: String,
    },

    #[error("root synset M{:08} is missing from the noun database", crate::ROOT_OFFSET)]
    MissingRoot,

    #[error("hypernym graph contains a directed cycle ({unsorted} meanings could not be ordered)")]
    CycleDetected { unsorted: usize },

    #[error("meaning {0} is not reachable from the root")]
    OrphanMeaning(String),

    #[error("pointer to unknown synset {target} from {source_offset}")]
    DanglingPointer { source_offset: String, target: String },

    #[error("'{0}' is not in the lexicon")]
    NotInLexicon(String),

    #[error("unknown meaning {0}")]
    UnknownMeaning(String),

    #[error("no path between '{0}' and '{1}'")]
    Disconnected(String, String),

    #[error("similarity of '{0}' with itself is undefined")]
    SelfPair(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("dataset is empty")]
    EmptyDataset,

    #[error("stream has {distinct} distinct nouns, the window needs {capacity}")]
    StreamTooShort { distinct: usize, capacity: usize },

    #[error("no records with success = {0}")]
    NoMatchingRecords(bool),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("unknown formula identifier '{0}'")]
    UnknownFormula(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("POS tagger unavailable: {0}")]
    TaggerUnavailable(String),

    #[error("POS tagger protocol error: {0}")]
    TaggerProtocolError(String),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn malformed(path: impl Into<PathBuf>, line: usize, reason: impl Into<String>) -> Self {
        Error::MalformedLine {
            path: path.into(),
            line,
            reason: reason.into(),
        }
    }
}
