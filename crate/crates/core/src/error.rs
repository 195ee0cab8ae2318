use thiserror::Error;

use crate::report::Report;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("backend mismatch: {0}")]
    BackendMismatch(String),
    #[error("rule {rule} violates the term order: {detail}")]
    RuleOrderViolation { rule: usize, detail: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("word degree {degree} exceeds cutoff {cutoff}")]
    DegreeExceeded { degree: usize, cutoff: usize },
    #[error("scaling power is not rational: {0}")]
    IrrationalPower(String),
    #[error("1 + eigenvalue vanishes on word `{0}`")]
    SingularGamma(String),
    #[error("coassociativity fails on `{0}`")]
    CoassociativityViolation(String),
    #[error("the two forms of the defining formula disagree on `{word}` (residual {residual:e})")]
    FormulaMismatch { word: String, residual: f64 },
    #[error("functional is not conditionally positive (min eigenvalue {min_eigenvalue:e})")]
    NotConditionallyPositive { min_eigenvalue: f64 },
    #[error("representation not determined inside the truncation window: {0}")]
    TruncationInconsistent(String),
    #[error("R and G are not complementary: {0}")]
    NotComplementary(String),
    #[error("operator not well defined: {0}")]
    IllDefined(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("missing value: {0}")]
    MissingValue(String),
    #[error("validation failed in `{}`", .0.command)]
    ValidationFailed(Box<Report>),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
