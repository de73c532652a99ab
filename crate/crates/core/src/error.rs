use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A denominator or gap fell below its degeneracy floor.
    #[error("degenerate configuration: {term} = {value:e} is below the floor {floor:e}")]
    Degenerate {
        term: &'static str,
        value: f64,
        floor: f64,
    },

    /// A bracketed search found no sign change.
    #[error("root not found: {0}")]
    NotFound(String),

    /// Pairwise-conjugate terms failed to cancel.
    #[error("numerical error: {0}")]
    Numerical(String),

    /// A sweep point failed; `source` is the underlying error.
    #[error("at {axis} = {value:e}: {source}")]
    AtPoint {
        axis: &'static str,
        value: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("config error on line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(line: usize, msg: impl Into<String>) -> Self {
        Error::Config {
            line,
            message: msg.into(),
        }
    }

    /// True for errors raised by the numerics rather than by input handling.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::AtPoint { source, .. } => source.is_numerical(),
            e => matches!(
                e,
                Error::Degenerate { .. } | Error::NotFound(_) | Error::Numerical(_)
            ),
        }
    }

    pub(crate) fn at(self, axis: &'static str, value: f64) -> Self {
        Error::AtPoint {
            axis,
            value,
            source: Box::new(self),
        }
    }
}
