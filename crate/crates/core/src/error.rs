use thiserror::Error;

use crate::arroid::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("point {0:?} has fewer members than the rank")]
    DegeneratePoint(Vec<String>),
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: u8, found: u8 },
    #[error("validation failed: {0}")]
    ValidationFailed(Box<ValidationReport>),
    #[error("arroid is not transversal")]
    NotTransversal,
    #[error("quotient has torsion (elementary divisors {0:?})")]
    TorsionQuotient(Vec<String>),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unknown ray `{0}`")]
    UnknownRay(String),
    #[error("unknown cone `{0}`")]
    UnknownCone(String),
    #[error("fundamental chain is not a cycle")]
    NotACycle,
    #[error("balancing and duality verdicts disagree: {0}")]
    InconsistentVerdict(String),
    #[error("intersection of `{0}` and `{1}` is not rational; supply abstract incidence data")]
    IrrationalIntersection(String, String),
    #[error("conic `{0}` is singular")]
    SingularConic(String),
    #[error("unknown curve `{0}`")]
    UnknownCurve(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("Picard cokernel has torsion (elementary divisors {0:?})")]
    TorsionCokernel(Vec<String>),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
