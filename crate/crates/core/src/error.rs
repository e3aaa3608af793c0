use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Lexically malformed markup.
    #[error("malformed markup at byte {offset}: {message}")]
    Markup { offset: usize, message: String },

    /// The markup parsed but does not have the shape of a replica.
    #[error("invalid replica: {0}")]
    Format(String),

    /// Raised only in strict mode.
    #[error("unresolved style class `{class}` on element at byte {offset}")]
    UnresolvedClass { class: String, offset: usize },

    #[error("no text")]
    NoText,

    #[error("no column structure")]
    NoColumns,

    #[error("insufficient lines")]
    InsufficientLines,

    #[error("no lines")]
    NoLines,

    #[error("sentence absent from body text")]
    SentenceAbsent,

    #[error("highlight requests overlap: {0}")]
    OverlappingHighlights(String),

    #[error("internal consistency error: {0}")]
    Consistency(String),

    #[error("invalid body-text file: {0}")]
    BodyTextFormat(String),

    #[error("empty corpus")]
    EmptyCorpus,

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by the shape of an input file rather than by the
    /// analysis itself.
    pub fn is_input_format(&self) -> bool {
        matches!(
            self,
            Error::Markup { .. }
                | Error::Format(_)
                | Error::UnresolvedClass { .. }
                | Error::BodyTextFormat(_)
                | Error::Config(_)
                | Error::Io(_)
        )
    }
}
