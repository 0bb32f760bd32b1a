use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("values live in different rings (n={0} and n={1})")]
    RingMismatch(u32, u32),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{0} is not divisible by the folding factor")]
    NotDivisible(String),
    #[error("folding needs an even eigenvalue, got {0}")]
    FoldParity(String),
    #[error("point {0:?} lies outside the domain")]
    OutsideDomain(Vec<f64>),
    #[error("{0} is not an eigenvalue")]
    NotAnEigenvalue(String),
    #[error("{value} is not below the cutoff {cutoff}")]
    OutOfRange { value: String, cutoff: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("count not stable under refinement: {0}")]
    Unstable(String),
    #[error("consistency check failed: {0}")]
    Consistency(String),
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(input: &str, reason: impl Into<String>) -> Error {
    Error::Parse {
        input: input.to_string(),
        reason: reason.into(),
    }
}
