use thiserror::Error;

use crate::commutative::AlgebraError;
use crate::lie::LieError;
use crate::linalg::LinalgError;
use crate::validation::ValidationReport;

/// A node of a Whitehead sequence where image and kernel disagree.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ExactnessFailure {
    pub degree: u32,
    /// The term of the sequence at which exactness fails, e.g. `L^5`.
    pub position: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("model failed validation:\n{0}")]
    Validation(ValidationReport),
    #[error("truncation to degree {bound} is not closed: d({generator}) uses generators of higher degree")]
    TruncationNotClosed { generator: String, bound: u32 },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("Whitehead sequence not exact at {} in degree {}: {}", .0.position, .0.degree, .0.detail)]
    Exactness(ExactnessFailure),
    #[error("not elliptic within bound {bound}: nonzero {what} in degree {degree}")]
    NotEllipticWithinBound { bound: u32, degree: u32, what: String },
    #[error("cannot certify vanishing of Gamma beyond degree {bound}: homology persists in degree {degree}")]
    UnboundedGamma { bound: u32, degree: u32 },
    #[error("models disagree: {check} differs in degree {degree} ({left} vs {right})")]
    Mismatch {
        check: String,
        degree: u32,
        left: i64,
        right: i64,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
