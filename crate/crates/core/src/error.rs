use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown generator `{name}`; known generators: {catalog}")]
    UnknownGenerator { name: String, catalog: String },

    #[error("parameter out of range: {0}")]
    ParameterRange(String),

    #[error("invalid input: {0}")]
    Input(String),

    /// A membership query fell outside the region where the set is known.
    #[error("membership unknown above {available}; a horizon of at least {required} is needed (try a larger --horizon)")]
    Precision { required: u64, available: u64 },

    #[error("resource limit exceeded: {what} (limit {limit})")]
    Resource { what: String, limit: u64 },

    #[error("not applicable: {0}")]
    Inapplicable(String),

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn resource(what: impl Into<String>, limit: u64) -> Self {
        Error::Resource {
            what: what.into(),
            limit,
        }
    }
}
