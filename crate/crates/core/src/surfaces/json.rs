use serde::{Deserialize, Serialize};

use super::{EdgeRef, PolygonalSurface, SurfaceError};
use crate::exactfield::{ElementJson, FieldElement, FieldError, FieldJson, NumberField};

/// Wire form: each point is its coefficient vector of `["num","den"]`
/// strings over `field`, and each identification a pair of
/// `[polygon, edge]` indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceJson {
    pub q: u64,
    pub field: FieldJson,
    pub polygons: Vec<Vec<Vec<[String; 2]>>>,
    pub identifications: Vec<[[usize; 2]; 2]>,
}

impl From<&PolygonalSurface> for SurfaceJson {
    fn from(s: &PolygonalSurface) -> Self {
        SurfaceJson {
            q: s.q,
            field: s.field().kind(),
            polygons: s
                .polygons()
                .iter()
                .map(|p| p.iter().map(|z| ElementJson::from(z).coeffs).collect())
                .collect(),
            identifications: s.identifications().iter().map(|&(a, b)| [[a.0, a.1], [b.0, b.1]]).collect(),
        }
    }
}

impl TryFrom<&SurfaceJson> for PolygonalSurface {
    type Error = SurfaceError;

    fn try_from(j: &SurfaceJson) -> Result<Self, SurfaceError> {
        let field = NumberField::from_kind(j.field)?;
        let polygons = j
            .polygons
            .iter()
            .map(|p| {
                p.iter()
                    .map(|c| FieldElement::try_from(&ElementJson { field: j.field, coeffs: c.clone() }))
                    .collect::<Result<Vec<_>, FieldError>>()
            })
            .collect::<Result<Vec<_>, FieldError>>()?;
        let identifications: Vec<(EdgeRef, EdgeRef)> =
            j.identifications.iter().map(|[a, b]| ((a[0], a[1]), (b[0], b[1]))).collect();
        PolygonalSurface::new(j.q, field, polygons, identifications)
    }
}
