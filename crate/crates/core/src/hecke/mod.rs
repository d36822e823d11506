//! The Hecke group `G_q = ⟨S, T⟩` with `S = [[1, λ], [0, 1]]`,
//! `T = [[0, -1], [1, 0]]` and `λ = 2cos(π/q)`, acting on `ℚ(λ) ∪ {∞}`.

mod group;
mod search;
mod special;
mod word;

pub use group::{generators, lambda, lambda_field, GroupMatrix};
pub use search::{search_special, SearchHit};
pub use special::{classify, leutbecher_parity_check, special_report, CuspPattern, MatrixClass, SpecialReport};
pub use word::{HeckeWord, Letter};

use thiserror::Error;

use crate::exactfield::FieldError;
use crate::parse::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeckeError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("q must be at least 3, got {0}")]
    InvalidQ(u64),
    #[error("determinant is not 1")]
    NotUnimodular,
    #[error("matrix entries are not in Z[lambda]")]
    NonIntegralEntries,
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, HeckeError>;
