use thiserror::Error;

/// Every failure the library reports. Contract violations (bad indices,
/// mismatched signatures) are usage errors, not panics.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} out of range for carrier of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("purity violation: {0}")]
    PurityViolation(String),
    #[error("invalid table: {0}")]
    InvalidTable(String),
    #[error("hom set {dom} -> {cod} has {cardinality} morphisms, over the budget of {budget}")]
    BudgetExceeded {
        dom: usize,
        cod: usize,
        cardinality: u128,
        budget: u64,
    },
    #[error("unknown check id `{0}`")]
    UnknownCheckId(String),
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("type error: {0}")]
    Type(String),
    #[error("assignment mismatch: {0}")]
    AssignmentMismatch(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
