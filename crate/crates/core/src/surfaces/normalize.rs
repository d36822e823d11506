use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::ambient::Ambient;
use super::construct::unfold_triangle;
use super::{PolygonalSurface, Result};
use crate::exactfield::{ratio_membership, subfield_membership, FieldElement};
use crate::matrix::Matrix2;

/// `N = diag(1, 1/sin(2π/q))`
pub fn matrix_n(q: u64) -> Result<Matrix2> {
    let amb = Ambient::new(q)?;
    let (zero, one) = (amb.int(0), amb.int(1));
    Ok(Matrix2::new(one, zero.clone(), zero, amb.sin_pi(2).inv()?)?)
}

/// `H = [[1, cos π/q], [0, sin π/q]]`
pub fn matrix_h(q: u64) -> Result<Matrix2> {
    let amb = Ambient::new(q)?;
    Ok(Matrix2::new(amb.int(1), amb.cos_pi(1), amb.int(0), amb.sin_pi(1))?)
}

/// `N·H = [[1, cos π/q], [0, 1/(2cos π/q)]]`, built directly.
pub fn matrix_nh(q: u64) -> Result<Matrix2> {
    let amb = Ambient::new(q)?;
    let c = amb.cos_pi(1);
    let d = c.scale_int(2).inv()?;
    Ok(Matrix2::new(amb.int(1), c, amb.int(0), d)?)
}

/// `X(a,b,c)` when `4 | q`, otherwise `N·X(a,b,c)`.
pub fn normalize(a: u64, b: u64, c: u64) -> Result<PolygonalSurface> {
    let x = unfold_triangle(a, b, c)?;
    if x.q % 4 == 0 {
        Ok(x)
    } else {
        x.apply_matrix(&matrix_n(x.q)?)
    }
}

/// Coordinates of one vertex in the basis `1, g, …, g^{d-1}` of the trace
/// field, `g = 2cos(2π/q)`; `None` when the coordinate is outside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipCertificate {
    pub polygon: usize,
    pub vertex: usize,
    pub re: Option<Vec<BigRational>>,
    pub im: Option<Vec<BigRational>>,
}

impl MembershipCertificate {
    pub fn ok(&self) -> bool {
        self.re.is_some() && self.im.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceReport {
    pub q: u64,
    pub trace_field_degree: usize,
    pub vertex_field_ok: bool,
    pub certificates: Vec<MembershipCertificate>,
    pub edge_slope_field_ok: bool,
    /// Edges whose slope left the trace field.
    pub bad_slopes: Vec<(usize, usize)>,
}

fn combine(coeffs: &[BigRational], g: &FieldElement) -> FieldElement {
    let mut acc = FieldElement::zero(g.field());
    let mut p = FieldElement::one(g.field());
    for c in coeffs {
        acc = &acc + &p.scale(c);
        p = &p * g;
    }
    acc
}

impl SurfaceReport {
    /// Recompute every stored coordinate vector against the surface.
    pub fn reverify(&self, s: &PolygonalSurface) -> Result<bool> {
        let g = Ambient::new(s.q)?.trace_field_generator();
        for c in &self.certificates {
            let z = &s.polygons()[c.polygon][c.vertex];
            for (coeffs, part) in [(&c.re, z.real_part()?), (&c.im, z.imag_part()?)] {
                match coeffs {
                    Some(v) if combine(v, &g) != part => return Ok(false),
                    None if subfield_membership(&part, &g, self.trace_field_degree)?.is_some() => return Ok(false),
                    _ => {}
                }
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> Value {
        let vec = |v: &Option<Vec<BigRational>>| match v {
            Some(v) => Value::from(v.iter().map(|c| c.to_string()).collect::<Vec<_>>()),
            None => Value::Null,
        };
        json!({
            "q": self.q,
            "trace_field_degree": self.trace_field_degree,
            "vertex_field_ok": self.vertex_field_ok,
            "edge_slope_field_ok": self.edge_slope_field_ok,
            "bad_slopes": self.bad_slopes,
            "certificates": self.certificates.iter().map(|c| json!({
                "polygon": c.polygon,
                "vertex": c.vertex,
                "re": vec(&c.re),
                "im": vec(&c.im),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Trace-field membership of all vertex coordinates (linear normalization)
/// and of all edge slopes (projective normalization on the holonomy).
pub fn check_linear_normalization(s: &PolygonalSurface) -> Result<SurfaceReport> {
    let amb = Ambient::new(s.q)?;
    let g = amb.trace_field_generator();
    let d = amb.trace_field_degree();
    let mut jobs = Vec::new();
    for (p, poly) in s.polygons().iter().enumerate() {
        for v in 0..poly.len() {
            jobs.push((p, v));
        }
    }
    let certificates = jobs
        .par_iter()
        .map(|&(p, v)| {
            let z = &s.polygons()[p][v];
            Ok(MembershipCertificate {
                polygon: p,
                vertex: v,
                re: subfield_membership(&z.real_part()?, &g, d)?,
                im: subfield_membership(&z.imag_part()?, &g, d)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let bad_slopes = jobs
        .par_iter()
        .map(|&e| {
            let w = s.edge_vector(e);
            let (x, y) = (w.real_part()?, w.imag_part()?);
            if x.is_zero() {
                return Ok(None);
            }
            Ok(ratio_membership(&y, &x, &g, d)?.is_none().then_some(e))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect::<Vec<_>>();
    Ok(SurfaceReport {
        q: s.q,
        trace_field_degree: d,
        vertex_field_ok: certificates.iter().all(MembershipCertificate::ok),
        certificates,
        edge_slope_field_ok: bad_slopes.is_empty(),
        bad_slopes,
    })
}
