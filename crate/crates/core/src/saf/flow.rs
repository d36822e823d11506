use std::collections::HashMap;

use super::iet::Iet;
use super::wedge::{saf_invariant, WedgeValue};
use super::{Result, SafError};
use crate::exactfield::{make_real_cos_field, FieldElement, FieldKind};
use crate::surfaces::{EdgeRef, PolygonalSurface};

/// A flow direction `(dx, dy)`, scaled so the first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Direction {
    pub dx: FieldElement,
    pub dy: FieldElement,
}

impl Direction {
    pub fn new(dx: FieldElement, dy: FieldElement) -> Result<Self> {
        dx.check_same(&dy)?;
        let lead = if !dx.is_zero() { dx.clone() } else if !dy.is_zero() { dy.clone() } else { return Err(SafError::ZeroDirection) };
        Ok(Direction { dx: dx.checked_div(&lead)?, dy: dy.checked_div(&lead)? })
    }

    /// Direction `(1, slope)`.
    pub fn slope(slope: FieldElement) -> Result<Self> {
        Direction::new(FieldElement::one(slope.field()), slope)
    }
}

/// One cross-section edge: the edge of its identification pair through
/// which the flow enters a polygon, and its transverse width.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionEdge {
    pub edge: EdgeRef,
    pub width: FieldElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstReturn {
    pub iet: Iet,
    /// Concatenated left to right to form the IET domain.
    pub sections: Vec<SectionEdge>,
}

/// Bring a real value into `ℚ(2cos 2π/N)`, `N = 4q`, where the surface
/// coordinates live after [`FieldElement::to_real_subfield`].
fn to_coordinate_field(x: &FieldElement, n: u64) -> Result<FieldElement> {
    let target = make_real_cos_field(n)?;
    Ok(match x.field().kind() {
        FieldKind::Cyclotomic(_) => x.embed(&crate::exactfield::make_cyclotomic_field(n)?)?.to_real_subfield()?,
        FieldKind::RealCos(_) => x.embed(&target)?,
    })
}

/// First-return map to the union of entry edges.
///
/// The cross-section takes, from each identification pair not parallel to
/// `d`, the edge through which the flow enters its polygon. A point there
/// crosses one convex polygon, leaves through an exit edge and arrives on
/// that edge's partner, which is again a section edge. Positions are
/// measured by `ξ(p) = dy·p_x − dx·p_y`, constant along flow lines up to the
/// gluing translations; pieces are half-open `[lo, hi)` in `ξ`.
pub fn first_return_iet(s: &PolygonalSurface, d: &Direction) -> Result<FirstReturn> {
    let n = match s.field().kind() {
        FieldKind::Cyclotomic(n) => n,
        FieldKind::RealCos(n) => n,
    };
    let dx = to_coordinate_field(&d.dx, n)?;
    let dy = to_coordinate_field(&d.dy, n)?;
    // ξ at every vertex
    let xi: Vec<Vec<FieldElement>> = s
        .polygons()
        .iter()
        .map(|p| {
            p.iter()
                .map(|z| {
                    let x = z.real_part()?.to_real_subfield()?;
                    let y = z.imag_part()?.to_real_subfield()?;
                    Ok(&(&dy * &x) - &(&dx * &y))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let vxi = |(p, k): EdgeRef| &xi[p][k % xi[p].len()];
    // change of ξ along an edge; > 0 on entry edges
    let rise = |(p, k): EdgeRef| vxi((p, k + 1)) - vxi((p, k));

    let mut sections = Vec::new();
    let mut section_of: HashMap<EdgeRef, usize> = HashMap::new();
    for &(a, b) in s.identifications() {
        let r = rise(a);
        let (entry, width) = match r.sign()? {
            0 => continue,
            1 => (a, r),
            _ => (b, -r),
        };
        section_of.insert(entry, sections.len());
        sections.push(SectionEdge { edge: entry, width });
    }
    if sections.is_empty() {
        return Err(SafError::ZeroDirection);
    }
    let mut offsets = Vec::with_capacity(sections.len());
    let mut acc = FieldElement::zero(sections[0].width.field());
    for sec in &sections {
        offsets.push(acc.clone());
        acc = &acc + &sec.width;
    }

    let mut pieces = Vec::new();
    for (k, sec) in sections.iter().enumerate() {
        let (p, e) = sec.edge;
        let lo = vxi((p, e));
        let hi = vxi((p, e + 1));
        for f in 0..s.polygons()[p].len() {
            if rise((p, f)).sign()? >= 0 {
                continue;
            }
            // exit edge covers [ξ(Q_{f+1}), ξ(Q_f))
            let (flo, fhi) = (vxi((p, f + 1)), vxi((p, f)));
            let a = if lo.cmp_real(flo)?.is_ge() { lo } else { flo };
            let b = if hi.cmp_real(fhi)?.is_le() { hi } else { fhi };
            if a.cmp_real(b)?.is_ge() {
                continue;
            }
            let partner = s.partner((p, f));
            let &k2 = section_of.get(&partner).ok_or(SafError::NonReturning(1))?;
            let start = &offsets[k] + &(a - lo);
            let image = &offsets[k2] + &(a - flo);
            pieces.push((start.clone(), b - a, &image - &start));
        }
    }
    Ok(FirstReturn { iet: Iet::from_pieces(pieces)?, sections })
}

pub fn saf_of_direction(s: &PolygonalSurface, d: &Direction) -> Result<WedgeValue> {
    saf_invariant(&first_return_iet(s, d)?.iet)
}
