use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("prime {p} is too small for this instance (need at least {need})")]
    PrimeTooSmall { p: u64, need: u128 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("value {value} is outside GF({p})")]
    ValueOutOfField { value: u64, p: u64 },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not skew-symmetric")]
    NotSkewSymmetric,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("line {0} is degenerate (generators are dependent)")]
    DegenerateLine(usize),
    #[error("ambient dimension {n} exceeds twice the line count {m}")]
    AmbientTooLarge { n: usize, m: usize },
    #[error("graph has a loop at vertex {0}")]
    LoopEdge(usize),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("entry {index} of a half-integral vector is {value}, expected 0, 1 or 2")]
    InvalidHalfValue { index: usize, value: u64 },
    #[error("instance has no fractional parity base")]
    NoParityBase,
    #[error("Monte Carlo failure: {0}")]
    MonteCarloFailure(String),
    #[error("random blow-up point does not attain the nc-rank")]
    MaxRankNotAttained,
    #[error("no certified answer after {0} attempts")]
    IterationCap(usize),
    #[error("instance too large for exhaustive enumeration ({what} = {value}, cap {cap})")]
    TooLarge {
        what: &'static str,
        value: usize,
        cap: usize,
    },
}

impl Error {
    /// Failures caused by an unlucky random substitution; rerunning with a
    /// fresh seed may succeed.
    pub fn is_retryable(&self) -> bool {
        matches!(self, Error::MonteCarloFailure(_) | Error::MaxRankNotAttained)
    }

    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
