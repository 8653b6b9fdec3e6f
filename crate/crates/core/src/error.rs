use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("unknown problem `{name}`; valid names: {}", valid.join(", "))]
    UnknownProblem { name: String, valid: Vec<&'static str> },

    #[error("non-finite {field} value at component {component}, index {index} ({context})")]
    NonFinite {
        field: &'static str,
        component: usize,
        index: String,
        context: String,
    },

    #[error("inadmissible state at {index}: density {density}, pressure {pressure}")]
    Inadmissible {
        index: String,
        density: f64,
        pressure: f64,
    },

    #[error("wave-speed bound must be non-negative and finite, got {0}")]
    InvalidWaveSpeed(f64),

    #[error("extent mismatch: {0}")]
    ExtentMismatch(String),

    #[error("error norms must be positive to compute an order, got {0:e} and {1:e}")]
    NonPositiveError(f64, f64),

    #[error("no reference solution available: {0}")]
    MissingReference(String),

    #[error("malformed csv: {0}")]
    Csv(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
