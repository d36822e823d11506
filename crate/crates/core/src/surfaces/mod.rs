//! Translation surfaces glued from polygons with vertices in `ℚ(ζ_{4q})`:
//! triangle unfoldings `X(a,b,c)`, regular-polygon surfaces, the
//! normalization matrices `N`, `H`, `NH`, and trace-field checks.

mod ambient;
mod construct;
mod json;
mod normalize;

pub use ambient::Ambient;
pub use construct::{regular_polygon_surface, unfold_triangle, veech_double_polygon};
pub use json::SurfaceJson;
pub use normalize::{
    check_linear_normalization, matrix_h, matrix_n, matrix_nh, normalize, MembershipCertificate, SurfaceReport,
};

use std::sync::Arc;

use thiserror::Error;

use crate::exactfield::{FieldElement, FieldError, NumberField};
use crate::matrix::Matrix2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("edge pairing failed: {0}")]
    UnfoldingMismatch(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("invalid surface: {0}")]
    InvalidSurface(String),
}

pub type Result<T> = std::result::Result<T, SurfaceError>;

/// `(polygon index, edge index)`; edge `k` runs from vertex `k` to `k+1`.
pub type EdgeRef = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolygonalSurface {
    pub q: u64,
    field: Arc<NumberField>,
    polygons: Vec<Vec<FieldElement>>,
    identifications: Vec<(EdgeRef, EdgeRef)>,
}

/// `Im(conj(u)·w)`, the signed area form, as a real cyclotomic element.
pub(crate) fn cross(u: &FieldElement, w: &FieldElement) -> Result<FieldElement> {
    Ok((&u.conj()? * w).imag_part()?)
}

impl PolygonalSurface {
    /// Build and validate.
    pub fn new(
        q: u64,
        field: Arc<NumberField>,
        polygons: Vec<Vec<FieldElement>>,
        identifications: Vec<(EdgeRef, EdgeRef)>,
    ) -> Result<Self> {
        let s = PolygonalSurface { q, field, polygons, identifications };
        s.validate()?;
        Ok(s)
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn polygons(&self) -> &[Vec<FieldElement>] {
        &self.polygons
    }

    pub fn identifications(&self) -> &[(EdgeRef, EdgeRef)] {
        &self.identifications
    }

    pub fn edge_count(&self) -> usize {
        self.polygons.iter().map(Vec::len).sum()
    }

    /// Edge vector `P[k+1] - P[k]`.
    pub fn edge_vector(&self, (p, k): EdgeRef) -> FieldElement {
        let poly = &self.polygons[p];
        &poly[(k + 1) % poly.len()] - &poly[k]
    }

    /// Start point of an edge.
    pub fn edge_start(&self, (p, k): EdgeRef) -> &FieldElement {
        &self.polygons[p][k]
    }

    /// The edge glued to `e`.
    pub fn partner(&self, e: EdgeRef) -> EdgeRef {
        self.identifications
            .iter()
            .find_map(|&(a, b)| if a == e { Some(b) } else if b == e { Some(a) } else { None })
            .expect("every edge is paired")
    }

    /// Each edge paired exactly once, paired edges are opposite vectors
    /// (so related by a translation), and polygons are strictly convex and
    /// counterclockwise.
    pub fn validate(&self) -> Result<()> {
        let mut seen = std::collections::HashSet::new();
        for &(a, b) in &self.identifications {
            for e in [a, b] {
                if e.0 >= self.polygons.len() || e.1 >= self.polygons[e.0].len() {
                    return Err(SurfaceError::InvalidSurface(format!("edge {e:?} out of range")));
                }
                if !seen.insert(e) {
                    return Err(SurfaceError::InvalidSurface(format!("edge {e:?} paired twice")));
                }
            }
            if !(&self.edge_vector(a) + &self.edge_vector(b)).is_zero() {
                return Err(SurfaceError::InvalidSurface(format!("edges {a:?} and {b:?} are not translates")));
            }
        }
        if seen.len() != self.edge_count() {
            return Err(SurfaceError::InvalidSurface("unpaired boundary edge".into()));
        }
        for (i, poly) in self.polygons.iter().enumerate() {
            for p in poly {
                if p.field().kind() != self.field.kind() {
                    return Err(FieldError::FieldMismatch(p.field().to_string(), self.field.to_string()).into());
                }
            }
            let n = poly.len();
            for k in 0..n {
                let u = &poly[(k + 1) % n] - &poly[k];
                let w = &poly[(k + 2) % n] - &poly[(k + 1) % n];
                if cross(&u, &w)?.sign()? <= 0 {
                    return Err(SurfaceError::InvalidSurface(format!("polygon {i} is not strictly convex ccw")));
                }
            }
        }
        Ok(())
    }

    /// `V - E + F` of the glued cell complex.
    pub fn euler_characteristic(&self) -> i64 {
        let offsets: Vec<usize> = self
            .polygons
            .iter()
            .scan(0, |acc, p| {
                let o = *acc;
                *acc += p.len();
                Some(o)
            })
            .collect();
        let idx = |(p, k): EdgeRef| offsets[p] + k % self.polygons[p].len();
        let mut parent: Vec<usize> = (0..self.edge_count()).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut x = x;
            while parent[x] != r {
                let n = parent[x];
                parent[x] = r;
                x = n;
            }
            r
        }
        for &((p, i), (q, j)) in &self.identifications {
            // start of one edge is the end of the other
            for (u, v) in [(idx((p, i)), idx((q, j + 1))), (idx((p, i + 1)), idx((q, j)))] {
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                parent[ru] = rv;
            }
        }
        let vertices = (0..parent.len()).filter(|&x| find(&mut parent, x) == x).count() as i64;
        vertices - self.identifications.len() as i64 + self.polygons.len() as i64
    }

    /// Apply a real linear map, acting on `(Re z, Im z)`.
    pub fn apply_matrix(&self, a: &Matrix2) -> Result<PolygonalSurface> {
        if a.field().kind() != self.field.kind() {
            return Err(FieldError::FieldMismatch(a.field().to_string(), self.field.to_string()).into());
        }
        if a.det().is_zero() {
            return Err(SurfaceError::SingularMatrix);
        }
        for e in a.entries() {
            if e.conj()? != *e {
                return Err(FieldError::NotReal.into());
            }
        }
        let i = FieldElement::imaginary_unit(&self.field)?;
        let polygons = self
            .polygons
            .iter()
            .map(|poly| {
                poly.iter()
                    .map(|z| {
                        let (x, y) = (z.real_part()?, z.imag_part()?);
                        let (x2, y2) = a.apply_vector(&x, &y);
                        Ok(&x2 + &(&i * &y2))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let s = PolygonalSurface { q: self.q, field: self.field.clone(), polygons, identifications: self.identifications.clone() };
        if a.det().sign()? < 0 {
            return Err(SurfaceError::InvalidParameters("orientation-reversing matrix".into()));
        }
        s.validate()?;
        Ok(s)
    }
}
