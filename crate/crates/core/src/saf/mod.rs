//! Interval exchange transformations over a number field `K`, the SAF
//! invariant `Σ l_i ∧ t_i ∈ K ∧_ℚ K`, and first-return maps of straight-line
//! flows on polygonal surfaces.

mod flow;
mod iet;
mod wedge;

pub use flow::{first_return_iet, saf_of_direction, Direction, FirstReturn, SectionEdge};
pub use iet::{compose, inverse, translations, Iet};
pub use wedge::{saf_invariant, wedge, WedgeValue};

use thiserror::Error;

use crate::exactfield::FieldError;
use crate::surfaces::SurfaceError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SafError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("invalid interval exchange: {0}")]
    InvalidIet(String),
    #[error("total lengths differ")]
    LengthMismatch,
    #[error("direction is zero")]
    ZeroDirection,
    #[error("flow did not return within {0} polygon crossings")]
    NonReturning(usize),
}

pub type Result<T> = std::result::Result<T, SafError>;

/// Sort by an exact, fallible comparison.
pub(crate) fn sort_exact<T>(
    v: &mut [T],
    mut cmp: impl FnMut(&T, &T) -> std::result::Result<std::cmp::Ordering, FieldError>,
) -> Result<()> {
    let mut err = None;
    v.sort_by(|a, b| match cmp(a, b) {
        Ok(o) => o,
        Err(e) => {
            err.get_or_insert(e);
            std::cmp::Ordering::Equal
        }
    });
    match err {
        Some(e) => Err(e.into()),
        None => Ok(()),
    }
}

/// Sort real field elements increasingly.
pub fn sort_exact_elements(v: &mut [crate::exactfield::FieldElement]) -> Result<()> {
    sort_exact(v, |a, b| a.cmp_real(b))
}
