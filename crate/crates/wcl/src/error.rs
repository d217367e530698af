use std::path::PathBuf;

use crate::syntax::ParseError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{}: {}", .0.origin, .0.error)]
    Parse(Box<ParseFailure>),

    #[error(transparent)]
    Core(#[from] wcl_core::Error),

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{origin}: {message}")]
    Table { origin: String, message: String },

    #[error("{0}")]
    Usage(String),
}

/// A parse error together with the text it refers to.
#[derive(Debug)]
pub struct ParseFailure {
    pub origin: String,
    pub error: ParseError,
    pub source_text: String,
}

impl Error {
    pub fn parse(origin: impl Into<String>, source_text: &str, error: ParseError) -> Self {
        Error::Parse(Box::new(ParseFailure {
            origin: origin.into(),
            error,
            source_text: source_text.to_string(),
        }))
    }

    /// Human-readable report; parse errors include the offending line.
    pub fn report(&self) -> String {
        match self {
            Error::Parse(p) => format!("{}: {}", p.origin, p.error.render(&p.source_text)),
            e => e.to_string(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
