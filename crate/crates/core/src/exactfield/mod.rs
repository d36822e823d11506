//! Exact arithmetic in cyclotomic fields `ℚ(ζ_N)` and their real subfields
//! `ℚ(2cos 2π/n)`.
//!
//! Elements are stored in the power basis of the field generator, modulo a
//! monic integer minimal polynomial. Real decisions (sign, floor) are made
//! exactly: a coefficient test settles zero, and otherwise a certified dyadic
//! interval for the embedding is refined until it excludes the boundary.

mod approx;
mod element;
mod field;
mod json;
mod sqrt;
mod subfield;

pub use approx::DyadicInterval;
pub use element::FieldElement;
pub use field::{make_cyclotomic_field, make_real_cos_field, ConjugateRoot, FieldKind, NumberField};
pub use json::{ElementJson, FieldJson};
pub use sqrt::{verify_sqrt, SQRT_DENOMINATOR_BOUND, SQRT_PRECISION_TIERS};
pub use subfield::{element_degree, minimal_polynomial, ratio_membership, root_of_unity, subfield_membership};

pub use crate::poly::cyclotomic_polynomial;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("operands live in different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("precision budget exhausted while deciding the sign of a nonzero element")]
    PrecisionExhausted,
    #[error("the modulus of {0} is not an even polynomial")]
    OddModulus(String),
    #[error("{0} does not contain i (need 4 | N)")]
    NoImaginaryUnit(String),
    #[error("{0} is not totally real")]
    NotTotallyReal(String),
    #[error("element is not real")]
    NotReal,
    #[error("operation requires a cyclotomic field, got {0}")]
    NotCyclotomic(String),
    #[error("cannot embed {0} into {1}")]
    NoEmbedding(String, String),
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("wrong coefficient count: expected {expected}, got {got}")]
    CoefficientCount { expected: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, FieldError>;
