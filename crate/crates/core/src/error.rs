use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A numeric input fell outside its admissible range.
    #[error("{name} = {value} is out of range: {expected}")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("depth units do not match: GSEE model uses `{gsee}`, GSP candidate uses `{gsp}`")]
    UnitMismatch { gsee: String, gsp: String },

    /// The small-depth simplification was requested but GSP depth is not
    /// negligible next to GSEE depth.
    #[error("simplified regime does not apply: GSP/GSEE depth ratio {ratio} exceeds {threshold}")]
    Regime { ratio: f64, threshold: f64 },

    #[error("unknown GSEE model `{0}` (see `catalog`)")]
    UnknownModel(String),

    #[error("unknown depth unit `{0}`")]
    UnknownUnit(String),

    /// `line` is 1-based; 0 when the problem is not tied to a line.
    #[error("{}", located(*line, message))]
    Parse { line: usize, message: String },

    #[error("Hermiticity violation: {0}")]
    Hermiticity(String),

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("dimension {dim} exceeds the configured limit of {limit}")]
    Resource { dim: usize, limit: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("iterative eigensolver did not converge after {restarts} restarts (residual {residual:e})")]
    NonConvergence { restarts: usize, residual: f64 },

    #[error(
        "state has no weight on the ground subspace (gamma = {gamma:e}); a spectral filter cannot recover it"
    )]
    ZeroProjection { gamma: f64 },

    #[error("invalid filter: {0}")]
    InvalidFilter(String),

    #[error("state vector has zero norm")]
    ZeroNorm,

    #[error("line {line}: {source}")]
    AtLine { line: usize, source: Box<Error> },

    #[error("row {row}: {source}")]
    Row { row: usize, source: Box<Error> },

    #[error("{0}")]
    Io(String),

    /// Command-line usage error naming the offending flag.
    #[error("{flag}: {message}")]
    Usage { flag: String, message: String },
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, expected: &'static str) -> Self {
        Error::Domain {
            name,
            value,
            expected,
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn at_line(self, line: usize) -> Self {
        match self {
            e @ (Error::Parse { .. } | Error::AtLine { .. }) => e,
            e => Error::AtLine {
                line,
                source: Box::new(e),
            },
        }
    }

    /// True for failures of the numerics rather than of the inputs.
    pub fn is_numeric_failure(&self) -> bool {
        matches!(self, Error::NonConvergence { .. })
    }
}

fn located(line: usize, message: &str) -> String {
    if line == 0 {
        message.to_string()
    } else {
        format!("line {line}: {message}")
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
