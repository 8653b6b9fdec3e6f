use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}:{line}: {msg}")]
    ConfigFile { path: String, line: usize, msg: String },

    #[error("invalid value for `{key}`: {msg}")]
    BadValue { key: String, msg: String },

    #[error("no problem given (use --problem or a `problem` key)")]
    MissingProblem,

    #[error("grid list must halve the spacing at each step, got {0:?}")]
    GridsNotHalving(Vec<usize>),

    #[error(transparent)]
    Core(#[from] hweno_core::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;
