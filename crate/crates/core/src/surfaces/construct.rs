use super::ambient::Ambient;
use super::{EdgeRef, PolygonalSurface, Result, SurfaceError};
use crate::arith::gcd;
use crate::exactfield::FieldElement;

// Side labels of the base triangle A = 0, B = 1, C = v.
const AB: usize = 0;
const BC: usize = 1;
const CA: usize = 2;

/// Edge index of a side in the stored vertex cycle. Copies of `T` keep
/// `[A, B, C]`; reflected copies are stored reversed as `[A, C, B]`.
fn edge_index(reflected: bool, side: usize) -> usize {
    match (reflected, side) {
        (false, s) => s,
        (true, AB) => 2,
        (true, BC) => 1,
        (true, _) => 0,
    }
}

/// The unfolding `X(a,b,c)` of the triangle with angles `(aπ, bπ, cπ)/q`,
/// `q = a + b + c`, as `2q` triangles.
///
/// Copy `j` of `T` has linear part `z ↦ ζ_q^j z` (polygon `j`), copy `j` of
/// the mirror image has `z ↦ ζ_q^j z̄` (polygon `q + j`). Reflecting in side
/// `s` multiplies the linear part by `z ↦ ζ_q^{k_s} z̄` with `k_AB = 0`,
/// `k_CA = a`, `k_BC = -b`, and that decides the gluing.
pub fn unfold_triangle(a: u64, b: u64, c: u64) -> Result<PolygonalSurface> {
    if a == 0 || b == 0 || c == 0 || gcd(gcd(a, b), c) != 1 {
        return Err(SurfaceError::InvalidParameters(format!(
            "need positive a, b, c with gcd 1, got ({a}, {b}, {c})"
        )));
    }
    let q = a + b + c;
    let amb = Ambient::new(q)?;
    let t = amb.sin_pi(b as i64).checked_div(&amb.sin_pi(c as i64))?;
    let v = &amb.exp_pi(a as i64) * &t;
    let v_bar = v.conj()?;
    let zero = amb.int(0);
    let one = amb.int(1);

    let mut polygons = Vec::with_capacity(2 * q as usize);
    for j in 0..q as i64 {
        let r = amb.exp_pi(2 * j);
        polygons.push(vec![zero.clone(), r.clone(), &r * &v]);
    }
    for j in 0..q as i64 {
        let r = amb.exp_pi(2 * j);
        polygons.push(vec![zero.clone(), &r * &v_bar, &r * &one]);
    }

    let k = |side: usize| -> i64 {
        match side {
            AB => 0,
            CA => a as i64,
            _ => -(b as i64),
        }
    };
    let mut identifications: Vec<(EdgeRef, EdgeRef)> = Vec::with_capacity(3 * q as usize);
    for j in 0..q as i64 {
        for side in [AB, BC, CA] {
            let partner = (j + k(side)).rem_euclid(q as i64) as usize;
            identifications.push((
                (j as usize, edge_index(false, side)),
                (q as usize + partner, edge_index(true, side)),
            ));
        }
    }
    PolygonalSurface::new(q, amb.field.clone(), polygons, identifications)
        .map_err(|e| SurfaceError::UnfoldingMismatch(e.to_string()))
}

/// Vertices `P_k = (ζ^k - 1)/(ζ - 1)`, `ζ = e^{2πi/n}`: a unit-side regular
/// `n`-gon with `P_0 = 0` and edge `k` along `ζ^k`.
fn regular_polygon(amb: &Ambient, n: u64) -> Result<Vec<FieldElement>> {
    let step = 2 * amb.q as i64 / n as i64;
    let den = &amb.exp_pi(step) - &amb.int(1);
    (0..n as i64)
        .map(|k| Ok((&amb.exp_pi(step * k) - &amb.int(1)).checked_div(&den)?))
        .collect()
}

/// Two regular `q`-gons, the second rotated by π, with edge `k` of one
/// glued to edge `k` of the other.
pub fn veech_double_polygon(q: u64) -> Result<PolygonalSurface> {
    if q < 3 {
        return Err(SurfaceError::InvalidParameters(format!("need q >= 3, got {q}")));
    }
    let amb = Ambient::new(q)?;
    let p = regular_polygon(&amb, q)?;
    let rotated: Vec<FieldElement> = p.iter().map(|z| -z).collect();
    let identifications = (0..q as usize).map(|k| ((0, k), (1, k))).collect();
    PolygonalSurface::new(q, amb.field.clone(), vec![p, rotated], identifications)
}

/// A regular `n`-gon, `n = 2m` even, with opposite sides glued.
/// The surface records `q = n`.
pub fn regular_polygon_surface(n: u64) -> Result<PolygonalSurface> {
    if n < 4 || n % 2 == 1 {
        return Err(SurfaceError::InvalidParameters(format!("need an even n >= 4, got {n}")));
    }
    let amb = Ambient::new(n)?;
    let p = regular_polygon(&amb, n)?;
    let m = n as usize / 2;
    let identifications = (0..m).map(|k| ((0, k), (0, k + m))).collect();
    PolygonalSurface::new(n, amb.field.clone(), vec![p], identifications)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_unfoldings() {
        let s = unfold_triangle(1, 1, 1).unwrap();
        assert_eq!(s.polygons().len(), 6);
        assert_eq!(s.euler_characteristic(), 0);
        let s = unfold_triangle(1, 1, 3).unwrap();
        assert_eq!(s.polygons().len(), 10);
        assert_eq!(s.euler_characteristic(), -2);
        assert!(unfold_triangle(2, 2, 2).is_err());
    }

    #[test]
    fn base_vertex_q7() {
        let s = unfold_triangle(1, 1, 5).unwrap();
        let v = &s.polygons()[0][2];
        let t = (std::f64::consts::PI / 7.0).sin() / (5.0 * std::f64::consts::PI / 7.0).sin();
        let (x, y) = v.to_complex_f64();
        assert!((x - t * (std::f64::consts::PI / 7.0).cos()).abs() < 1e-12);
        assert!((y - t * (std::f64::consts::PI / 7.0).sin()).abs() < 1e-12);
    }

    #[test]
    fn polygon_surfaces() {
        let v5 = veech_double_polygon(5).unwrap();
        assert_eq!((v5.polygons().len(), v5.identifications().len()), (2, 5));
        assert_eq!(v5.euler_characteristic(), -2);
        let m8 = regular_polygon_surface(8).unwrap();
        assert_eq!(m8.identifications().len(), 4);
        assert_eq!(m8.euler_characteristic(), -2);
        let sq = regular_polygon_surface(4).unwrap();
        let pts: Vec<(f64, f64)> = sq.polygons()[0].iter().map(|z| z.to_complex_f64()).collect();
        for (p, e) in pts.iter().zip([(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]) {
            assert!((p.0 - e.0).abs() < 1e-12 && (p.1 - e.1).abs() < 1e-12);
        }
        assert!(regular_polygon_surface(5).is_err());
    }
}
