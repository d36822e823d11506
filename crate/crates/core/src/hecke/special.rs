use serde::Serialize;

use super::group::GroupMatrix;
use super::{HeckeError, Result};
use crate::exactfield::FieldElement;
use crate::matrix::{Matrix2, Point};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MatrixClass {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

/// Which coset of `ℚ(λ²)` inside `ℚ(λ)` the finite fixed points share.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CuspPattern {
    InEvenSubfield,
    InLambdaTimesEvenSubfield,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialReport {
    pub class: MatrixClass,
    pub trace: FieldElement,
    /// `tr² - 4`
    pub discriminant: FieldElement,
    pub is_special: bool,
    pub sqrt_delta: Option<FieldElement>,
    /// Fixed points lying in `ℚ(λ) ∪ {∞}`; empty when they are not rational
    /// over the field (elliptic, or hyperbolic but not special).
    pub fixed_points: Vec<Point>,
    /// Only for even `q`, and only when there is a finite fixed point.
    pub cusp_pattern: Option<CuspPattern>,
}

/// Class by the exact sign of `tr² - 4`, together with that discriminant.
pub fn classify(m: &Matrix2) -> Result<(MatrixClass, FieldElement)> {
    let tr = m.trace();
    let delta = &(&tr * &tr) - &FieldElement::from_int(tr.field(), 4);
    let class = match delta.sign()? {
        -1 => MatrixClass::Elliptic,
        0 => MatrixClass::Parabolic,
        _ => MatrixClass::Hyperbolic,
    };
    Ok((class, delta))
}

fn fixed_points(m: &Matrix2, class: MatrixClass, sqrt_delta: Option<&FieldElement>) -> Result<Vec<Point>> {
    let a_minus_d = &m.a - &m.d;
    if m.c.is_zero() {
        let mut pts = vec![Point::Infinity];
        if !a_minus_d.is_zero() {
            pts.push(Point::Finite(m.b.checked_div(&(-&a_minus_d))?));
        }
        return Ok(pts);
    }
    let two_c = m.c.scale_int(2);
    Ok(match (class, sqrt_delta) {
        (MatrixClass::Parabolic, _) => vec![Point::Finite(a_minus_d.checked_div(&two_c)?)],
        (MatrixClass::Hyperbolic, Some(s)) => vec![
            Point::Finite((&a_minus_d + s).checked_div(&two_c)?),
            Point::Finite((&a_minus_d - s).checked_div(&two_c)?),
        ],
        _ => Vec::new(),
    })
}

fn cusp_pattern(points: &[Point]) -> Result<Option<CuspPattern>> {
    let finite: Vec<&FieldElement> = points.iter().filter_map(Point::finite).collect();
    if finite.is_empty() || !finite[0].field().modulus().is_even() || finite[0].field().degree() < 2 {
        return Ok(None);
    }
    let mut even = true;
    let mut odd = true;
    for x in finite {
        even &= x.in_even_subfield()?;
        odd &= x.in_lambda_times_even_subfield()?;
    }
    Ok(Some(match (even, odd) {
        (true, _) => CuspPattern::InEvenSubfield,
        (false, true) => CuspPattern::InLambdaTimesEvenSubfield,
        _ => CuspPattern::Neither,
    }))
}

/// Classification, the special-hyperbolic test and the fixed points.
pub fn special_report(m: &GroupMatrix) -> Result<SpecialReport> {
    let (class, delta) = classify(m)?;
    let sqrt_delta = match class {
        MatrixClass::Hyperbolic => delta.sqrt_in_field()?,
        _ => None,
    };
    let is_special = sqrt_delta.is_some();
    let fixed = fixed_points(m, class, sqrt_delta.as_ref())?;
    for p in &fixed {
        debug_assert_eq!(&m.apply(p)?, p, "fixed point check");
    }
    let cusp = if m.q() % 2 == 0 { cusp_pattern(&fixed)? } else { None };
    Ok(SpecialReport {
        class,
        trace: m.trace(),
        discriminant: delta,
        is_special,
        sqrt_delta,
        fixed_points: fixed,
        cusp_pattern: cusp,
    })
}

/// Each column has one entry in `ℤ[λ²]` and the other in `λℤ[λ²]`
/// (zero counts as both). Defined for even `q`, where the modulus is even.
pub fn leutbecher_parity_check(m: &GroupMatrix) -> Result<bool> {
    if m.q() % 2 == 1 {
        return Err(HeckeError::Unsupported(format!(
            "q = {} is odd: the modulus of lambda is not even, so Z[lambda] does not split by coefficient parity",
            m.q()
        )));
    }
    if !m.entries().iter().all(|e| e.is_integral_poly()) {
        return Err(HeckeError::NonIntegralEntries);
    }
    let col_ok = |x: &FieldElement, y: &FieldElement| -> Result<bool> {
        let (xe, xo) = (x.in_even_subfield()?, x.in_lambda_times_even_subfield()?);
        let (ye, yo) = (y.in_even_subfield()?, y.in_lambda_times_even_subfield()?);
        Ok((xe && yo) || (xo && ye))
    };
    Ok(col_ok(&m.a, &m.c)? && col_ok(&m.b, &m.d)?)
}
