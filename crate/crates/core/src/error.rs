use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("elements live over different symplectic spaces ({0} vs {1} pairs)")]
    SpaceMismatch(usize, usize),
    #[error("matrix is not in sp(W): {0}")]
    NotSymplectic(String),
    #[error("outside the stable range: {0}; use the brute-force oracle")]
    Unstable(String),
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("size guard exceeded: {what} = {size} > {limit}")]
    GuardExceeded { what: &'static str, size: usize, limit: usize },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("generator set does not close under the bracket: {0}")]
    NotClosed(String),
    #[error("no witness found up to filtration degree {0}; increase k'")]
    NoWitness(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("horizon mismatch: {0} vs {1}")]
    HorizonMismatch(u32, u32),
    #[error("missing character data: {0}")]
    MissingData(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Guard and "increase k" failures are inconclusive rather than wrong.
    pub fn is_inconclusive(&self) -> bool {
        matches!(self, Error::GuardExceeded { .. } | Error::NoWitness(_) | Error::Unstable(_))
    }
}
