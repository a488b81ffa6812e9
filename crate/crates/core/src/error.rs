use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("capacity exceeded: {what} has dimension {dim}, cap is {cap}")]
    CapacityExceeded { what: String, dim: usize, cap: usize },
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("matrix is singular")]
    Singular,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no separating point found within a budget of {0} points")]
    SearchBudget(usize),
    #[error("non-finite coefficient in input")]
    NonFinite,
    #[error("degenerate input: {0}")]
    Degenerate(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

pub(crate) fn check_positive(name: &str, v: u32) -> Result<()> {
    if v == 0 {
        Err(Error::InvalidParameter(alloc::format!("{name} must be at least 1")))
    } else {
        Ok(())
    }
}
