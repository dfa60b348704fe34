use thiserror::Error;

/// Errors raised while building or evaluating generated problems.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid fid: {0} (expected 1..=24)")]
    InvalidFunctionId(u32),
    #[error("invalid iid: {0} (expected >= 1)")]
    InvalidInstanceId(u32),
    #[error("invalid dim: {0} (expected >= 1)")]
    InvalidDimension(usize),
    #[error("dimension mismatch: expected {expected} coordinates, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("non-finite coordinate at index {0}")]
    NonFiniteInput(usize),
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("x_opt[{index}] = {value} lies outside [-5, 5]")]
    OptimumOutOfDomain { index: usize, value: f64 },
    #[error("alpha = {0} lies outside [0, 1]")]
    InvalidAlpha(f64),
    #[error("threshold = {0} lies outside [0, 1)")]
    InvalidThreshold(f64),
    #[error("precision must be non-negative, got {0}")]
    NegativePrecision(f64),
    #[error("scale factor must be positive and finite, got {0}")]
    InvalidScaleFactor(f64),
    #[error("trace is empty")]
    EmptyTrace,
    #[error("trace value y[{index}] = {value} is not positive")]
    NonPositiveValue { index: usize, value: f64 },
    #[error("traces have mixed budgets ({0} vs {1})")]
    MixedBudgets(usize, usize),
    #[error("unknown algorithm: {0}")]
    UnknownAlgorithm(String),
    #[error("unknown aggregator: {0}")]
    UnknownAggregator(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed input at line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("i/o error: {0}")]
    Io(String),
    #[error("serialization error: {0}")]
    Serialization(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
