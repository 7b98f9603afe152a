//! Exact rational-homotopy computations for Sullivan and Quillen models.

pub mod catalog;
pub mod commutative;
pub mod dsl;
pub mod error;
pub mod invariants;
pub mod lie;
pub mod linalg;
pub mod quillen;
pub mod sullivan;
pub mod validation;

pub use error::{Error, ExactnessFailure, Result};
pub use linalg::{QMatrix, QVector, Rational};
