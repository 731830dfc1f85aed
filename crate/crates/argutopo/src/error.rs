use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse error class, used by the CLI to choose a process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Bad parameters or configuration.
    Config,
    /// Malformed or unusable input data.
    Data,
    /// A numerical stage could not proceed (degenerate series, too few points).
    Numerical,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("glove text parse error at line {line}: {message}")]
    GloveParse { line: usize, message: String },

    #[error("word2vec binary parse error at byte {offset}: {message}")]
    Word2VecParse { offset: u64, message: String },

    #[error("csv parse error at line {line}: {message}")]
    CsvParse { line: usize, message: String },

    #[error("json error: {0}")]
    Json(String),

    #[error("invalid persistence diagram: {0}")]
    InvalidDiagram(String),

    #[error("out-of-vocabulary tokens: {}", tokens.join(", "))]
    OutOfVocabulary { tokens: Vec<String> },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("zero variance: {0}")]
    ZeroVariance(String),

    #[error(
        "series too short: N={n} cannot support D={dim}, tau={tau} \
         (need N - (D-1)*tau >= {need})"
    )]
    SeriesTooShort {
        n: usize,
        dim: usize,
        tau: usize,
        need: usize,
    },

    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("{stage} stage failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Io(_)
            | Error::GloveParse { .. }
            | Error::Word2VecParse { .. }
            | Error::CsvParse { .. }
            | Error::Json(_)
            | Error::InvalidDiagram(_)
            | Error::OutOfVocabulary { .. }
            | Error::EmptyInput(_) => ErrorKind::Data,
            Error::InvalidParameter(_) => ErrorKind::Config,
            Error::ZeroVariance(_) | Error::SeriesTooShort { .. } => ErrorKind::Numerical,
            Error::Stage { source, .. } => source.kind(),
        }
    }

    /// Wraps an error with the name of the pipeline stage that produced it.
    pub fn in_stage(self, stage: &'static str) -> Error {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }
}
