//! Degrees of `ℚ(cos 2π/q)` and `ℚ(sin 2π/q)`, their containment, and exact
//! cross-checks by minimal-polynomial degrees in `ℚ(ζ_{4q})`.

use serde::Serialize;
use thiserror::Error;

use crate::arith::{gcd, totient};
use crate::exactfield::{element_degree, make_real_cos_field, subfield_membership, FieldElement, FieldError};
use crate::poly::{chebyshev_u, IntPoly};
use crate::surfaces::{Ambient, SurfaceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrigError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("unsupported q = {0}: need q > 2 and q != 4")]
    UnsupportedQ(u64),
}

pub type Result<T> = std::result::Result<T, TrigError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ContainmentClass {
    EqualFields,
    SinIndexTwoInCos,
    CosIndexTwoInSin,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub q: u64,
    pub cos_degree: u64,
    pub sin_degree: u64,
    /// `ℚ(sin 2π/q) = ℚ(cos 2π/K)`
    #[serde(rename = "K")]
    pub k: u64,
    pub gcd_value: u64,
    pub class: ContainmentClass,
}

fn check_q(q: u64) -> Result<()> {
    if q <= 2 || q == 4 {
        Err(TrigError::UnsupportedQ(q))
    } else {
        Ok(())
    }
}

/// `gcd(4q, 4 − q)` by the residue of `q`.
pub fn gcd_case(q: u64) -> Result<u64> {
    if q <= 2 {
        return Err(TrigError::UnsupportedQ(q));
    }
    Ok(if q % 2 == 1 {
        1
    } else if q % 4 == 2 {
        2
    } else if q % 8 == 0 {
        4
    } else if q % 16 == 12 {
        8
    } else {
        16
    })
}

/// `gcd(4q, |4 − q|)` computed directly.
pub fn gcd_direct(q: u64) -> u64 {
    gcd(4 * q, q.abs_diff(4))
}

pub fn degree_report(q: u64) -> Result<DegreeReport> {
    check_q(q)?;
    let g = gcd_case(q)?;
    let k = 4 * q / g;
    let class = if q % 8 == 0 {
        ContainmentClass::EqualFields
    } else if q % 4 == 0 {
        ContainmentClass::SinIndexTwoInCos
    } else {
        ContainmentClass::CosIndexTwoInSin
    };
    Ok(DegreeReport { q, cos_degree: totient(q) / 2, sin_degree: totient(k) / 2, k, gcd_value: g, class })
}

/// The formula degrees and containment checked against exact computation:
/// minimal-polynomial degrees of `cos 2π/q`, `sin 2π/q` in `ℚ(ζ_{4q})`, the
/// degree of `ℚ(2cos 2π/K)`, the degree ratio, and membership of the
/// smaller field's generator in the larger field.
pub fn verify_degrees_exact(q: u64) -> Result<bool> {
    let r = degree_report(q)?;
    let amb = Ambient::new(q)?;
    let (c, s) = (amb.cos_pi(2), amb.sin_pi(2));
    let (dc, ds) = (element_degree(&c) as u64, element_degree(&s) as u64);
    let dk = make_real_cos_field(r.k)?.degree() as u64;
    let ratio_ok = match r.class {
        ContainmentClass::EqualFields => dc == ds,
        ContainmentClass::SinIndexTwoInCos => dc == 2 * ds,
        ContainmentClass::CosIndexTwoInSin => ds == 2 * dc,
    };
    let member = |x: &FieldElement, y: &FieldElement, d: u64| subfield_membership(x, y, d as usize).map(|m| m.is_some());
    let containment_ok = match r.class {
        ContainmentClass::EqualFields => member(&s, &c, dc)? && member(&c, &s, ds)?,
        ContainmentClass::SinIndexTwoInCos => member(&s, &c, dc)? && !member(&c, &s, ds)?,
        ContainmentClass::CosIndexTwoInSin => member(&c, &s, ds)? && !member(&s, &c, dc)?,
    };
    Ok(dc == r.cos_degree && ds == r.sin_degree && dk == r.sin_degree && ratio_ok && containment_ok)
}

/// Horner evaluation of an integer polynomial at a field element.
pub fn eval_int_poly(p: &IntPoly, x: &FieldElement) -> FieldElement {
    p.coeffs().iter().rev().fold(FieldElement::zero(x.field()), |acc, c| {
        &(&acc * x) + &FieldElement::from_rational(x.field(), &c.clone().into())
    })
}

/// `sin((n+1)θ) = U_n(cos θ)·sin θ` at `θ = 2π/q`, exactly in `ℚ(ζ_{4q})`.
pub fn verify_chebyshev_identity(n: usize, q: u64) -> Result<bool> {
    let amb = Ambient::new(q)?;
    let lhs = amb.sin_pi(2 * (n as i64 + 1));
    let rhs = &eval_int_poly(&chebyshev_u(n), &amb.cos_pi(2)) * &amb.sin_pi(2);
    Ok(lhs == rhs)
}

/// For `α ∈ ℚ(ζ_q)`: `Im α ∈ ℚ(cos 2π/q)` when `4 | q`, otherwise
/// `Im α / sin(2π/q) ∈ ℚ(cos 2π/q)`.
pub fn ks_imaginary_part_check(alpha: &FieldElement, q: u64) -> Result<bool> {
    let amb = Ambient::new(q)?;
    let mut im = alpha.embed(&amb.field)?.imag_part()?;
    if q % 4 != 0 {
        im = im.checked_div(&amb.sin_pi(2))?;
    }
    Ok(subfield_membership(&im, &amb.trace_field_generator(), amb.trace_field_degree())?.is_some())
}

/// `[ℚ(cos π/q) : ℚ]` equals `[ℚ(cos 2π/q) : ℚ]` for odd `q` and is twice
/// it for even `q`.
pub fn verify_cos_half_angle(q: u64) -> Result<bool> {
    if q < 3 {
        return Err(TrigError::UnsupportedQ(q));
    }
    let amb = Ambient::new(q)?;
    let (d1, d2) = (element_degree(&amb.cos_pi(1)), element_degree(&amb.cos_pi(2)));
    Ok(if q % 2 == 1 { d1 == d2 } else { d1 == 2 * d2 })
}

/// For `4 | q`: `ℚ(tan π/q) = ℚ(tan² π/q)`, as equal minimal-polynomial
/// degrees.
pub fn verify_tan_square_degree(q: u64) -> Result<bool> {
    if q % 4 != 0 {
        return Err(TrigError::UnsupportedQ(q));
    }
    let amb = Ambient::new(q)?;
    let t = amb.sin_pi(1).checked_div(&amb.cos_pi(1))?;
    Ok(element_degree(&t) == element_degree(&t.square()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{make_cyclotomic_field, root_of_unity};

    #[test]
    fn gcd_cases() {
        assert_eq!(gcd_case(7).unwrap(), 1);
        assert_eq!(gcd_case(12).unwrap(), 8);
        assert_eq!(gcd_case(20).unwrap(), 16);
        for q in 3..400 {
            assert_eq!(gcd_case(q).unwrap(), gcd_direct(q), "q = {q}");
        }
    }

    #[test]
    fn reports() {
        let r = degree_report(28).unwrap();
        assert_eq!((r.sin_degree, r.cos_degree, r.class), (3, 6, ContainmentClass::SinIndexTwoInCos));
        assert_eq!(degree_report(36).unwrap().sin_degree, 3);
        let r = degree_report(6).unwrap();
        assert_eq!((r.cos_degree, r.sin_degree, r.class), (1, 2, ContainmentClass::CosIndexTwoInSin));
        assert_eq!(degree_report(4), Err(TrigError::UnsupportedQ(4)));
    }

    #[test]
    fn exact_degrees() {
        for q in [5, 7, 8, 12, 28] {
            assert!(verify_degrees_exact(q).unwrap(), "q = {q}");
        }
    }

    #[test]
    fn chebyshev_and_ks() {
        assert!(verify_chebyshev_identity(3, 7).unwrap());
        assert!(verify_chebyshev_identity(0, 9).unwrap());
        assert!(ks_imaginary_part_check(&root_of_unity(8, 1).unwrap(), 8).unwrap());
        assert!(ks_imaginary_part_check(&root_of_unity(5, 1).unwrap(), 5).unwrap());
        let half = FieldElement::from_int(&make_cyclotomic_field(5).unwrap(), 3);
        assert!(ks_imaginary_part_check(&half, 5).unwrap());
    }

    #[test]
    fn half_angle_and_tan() {
        for q in 3..=16 {
            assert!(verify_cos_half_angle(q).unwrap(), "q = {q}");
        }
        for q in [4, 8, 12] {
            assert!(verify_tan_square_degree(q).unwrap());
        }
    }
}
