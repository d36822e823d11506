//! Rosen λ-continued fractions `x = r₀λ − 1/(r₁λ − 1/(…))` with
//! nearest-integer digits, and the resulting semi-decision of membership in
//! the cusp orbit `G_q·∞`.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::exactfield::{FieldElement, FieldError};
use crate::hecke::{self, classify, GroupMatrix, HeckeError, HeckeWord, Letter, MatrixClass};
use crate::matrix::Point;

pub const DEFAULT_BUDGET: usize = 2000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RosenError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
    #[error("expansion is not eventually periodic")]
    NotPeriodic,
    #[error("period matrix is not hyperbolic")]
    NotHyperbolic,
    #[error("remainder left [-l/2, l/2): {0}")]
    RemainderOutOfRange(String),
    #[error("expansion has no digits")]
    NoDigits,
}

pub type Result<T> = std::result::Result<T, RosenError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum ExpansionStatus {
    Finite,
    EventuallyPeriodic { preperiod_len: usize, period_len: usize },
    Undecided { steps: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RosenExpansion {
    pub q: u64,
    pub digits: Vec<i64>,
    pub status: ExpansionStatus,
    /// `x_0 = x`, `x_{i+1} = -1/(x_i - r_i λ)`.
    pub iterates: Vec<FieldElement>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub digit: i64,
    pub remainder: FieldElement,
    pub next: Option<FieldElement>,
}

/// One step: `r = ⌊x/λ + 1/2⌋`, `y = x − rλ ∈ [−λ/2, λ/2)`, next `−1/y`.
pub fn rosen_step(x: &FieldElement, q: u64) -> Result<Step> {
    let l = hecke::lambda(q)?;
    x.check_same(&l)?;
    let r = x.nearest_integer(&l)?;
    let digit = i64::try_from(&r).map_err(|_| RosenError::RemainderOutOfRange(format!("digit {r} overflows")))?;
    let y = x - &l.scale_int(digit);
    let half = l.scale(&num_rational::BigRational::new(1.into(), 2.into()));
    if (&y + &half).sign()? < 0 || (&y - &half).sign()? >= 0 {
        return Err(RosenError::RemainderOutOfRange(y.to_string()));
    }
    let next = if y.is_zero() { None } else { Some(-y.inv()?) };
    Ok(Step { digit, remainder: y, next })
}

/// Expand until termination, the first exact repetition of an iterate, or
/// `max_steps` digits.
pub fn expand(x: &FieldElement, q: u64, max_steps: usize) -> Result<RosenExpansion> {
    let mut seen: HashMap<FieldElement, usize> = HashMap::new();
    let mut digits = Vec::new();
    let mut iterates = Vec::new();
    let mut cur = x.clone();
    loop {
        if let Some(&j) = seen.get(&cur) {
            let i = iterates.len();
            return Ok(RosenExpansion {
                q,
                digits,
                status: ExpansionStatus::EventuallyPeriodic { preperiod_len: j, period_len: i - j },
                iterates,
            });
        }
        if digits.len() >= max_steps {
            return Ok(RosenExpansion { q, digits, status: ExpansionStatus::Undecided { steps: max_steps }, iterates });
        }
        let step = rosen_step(&cur, q)?;
        seen.insert(cur.clone(), iterates.len());
        iterates.push(cur);
        digits.push(step.digit);
        match step.next {
            None => return Ok(RosenExpansion { q, digits, status: ExpansionStatus::Finite, iterates }),
            Some(n) => cur = n,
        }
    }
}

fn product(q: u64, digits: &[i64]) -> Result<GroupMatrix> {
    let w = HeckeWord::new(q, digits.iter().flat_map(|&r| [Letter::S(r), Letter::T]));
    Ok(w.eval()?)
}

/// `S^{r₀}T · S^{r₁}T ⋯ S^{r_k}T`.
pub fn convergent_matrix(digits: &[i64], q: u64) -> Result<GroupMatrix> {
    if digits.is_empty() {
        return Err(RosenError::NoDigits);
    }
    product(q, digits)
}

/// `M = P·C·P⁻¹` from the preperiod product `P` and period product `C`.
pub fn hyperbolic_from_periodic(e: &RosenExpansion, x: &FieldElement) -> Result<GroupMatrix> {
    let ExpansionStatus::EventuallyPeriodic { preperiod_len, period_len } = e.status else {
        return Err(RosenError::NotPeriodic);
    };
    let p = product(e.q, &e.digits[..preperiod_len])?;
    let c = product(e.q, &e.digits[preperiod_len..preperiod_len + period_len])?;
    let m = p.mul(&c).mul(&p.inverse());
    if classify(&m)?.0 != MatrixClass::Hyperbolic {
        return Err(RosenError::NotHyperbolic);
    }
    let fx = Point::Finite(x.clone());
    if m.apply(&fx)? != fx {
        return Err(RosenError::NotPeriodic);
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitVerdict {
    /// `witness·∞ = x`
    InOrbitOfInfinity { witness: GroupMatrix },
    /// `witness` is hyperbolic and fixes `x`; a cusp of a Fuchsian group is
    /// fixed by no hyperbolic element, so `x ∉ G_q·∞`.
    NotInOrbit { hyperbolic_witness: GroupMatrix },
    Undecided { steps: usize },
}

pub fn orbit_test(x: &FieldElement, q: u64, budget: usize) -> Result<OrbitVerdict> {
    let e = expand(x, q, budget)?;
    Ok(match e.status {
        ExpansionStatus::Finite => {
            let witness = convergent_matrix(&e.digits, q)?;
            debug_assert_eq!(witness.apply(&Point::Infinity)?, Point::Finite(x.clone()));
            OrbitVerdict::InOrbitOfInfinity { witness }
        }
        ExpansionStatus::EventuallyPeriodic { .. } => {
            OrbitVerdict::NotInOrbit { hyperbolic_witness: hyperbolic_from_periodic(&e, x)? }
        }
        ExpansionStatus::Undecided { steps } => OrbitVerdict::Undecided { steps },
    })
}
