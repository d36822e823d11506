//! Complex conjugation, real/imaginary parts, embeddings between fields,
//! subfield membership and minimal polynomials of elements.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::element::FieldElement;
use super::field::{make_cyclotomic_field, make_real_cos_field, FieldKind, NumberField};
use super::{FieldError, Result};
use crate::linalg::{self, Echelon};
use crate::poly::{lucas_v_polys, IntPoly, RatPoly};

fn cyclotomic_n(f: &NumberField) -> Result<u64> {
    match f.kind() {
        FieldKind::Cyclotomic(n) => Ok(n),
        k => Err(FieldError::NotCyclotomic(k.to_string())),
    }
}

fn conj_images(f: &Arc<NumberField>) -> &Vec<Vec<BigInt>> {
    f.conj_images.get_or_init(|| {
        let n = f.conductor() as usize;
        let d = f.degree();
        (0..d)
            .map(|k| {
                let e = (n - k % n) % n;
                let mut mono = vec![BigInt::zero(); e + 1];
                mono[e] = BigInt::one();
                let mut r = IntPoly::new(mono).rem_monic(f.modulus()).coeffs().to_vec();
                r.resize(d, BigInt::zero());
                r
            })
            .collect()
    })
}

impl FieldElement {
    /// Complex conjugation `ζ ↦ ζ^{-1}` (cyclotomic fields); identity on
    /// real cosine fields.
    pub fn conj(&self) -> Result<FieldElement> {
        let f = self.field();
        match f.kind() {
            FieldKind::RealCos(_) => Ok(self.clone()),
            FieldKind::Cyclotomic(_) => {
                let images = conj_images(f);
                let d = f.degree();
                let (num, den) = self.scaled_parts();
                let mut out = vec![BigInt::zero(); d];
                for (c, img) in num.iter().zip(images) {
                    if c.is_zero() {
                        continue;
                    }
                    for (o, v) in out.iter_mut().zip(img) {
                        *o += c * v;
                    }
                }
                let coeffs: Vec<BigRational> =
                    out.into_iter().map(|c| BigRational::new(c, den.clone())).collect();
                FieldElement::from_coeffs(f, &coeffs)
            }
        }
    }

    /// `(z + conj z) / 2`
    pub fn real_part(&self) -> Result<FieldElement> {
        let s = self + &self.conj()?;
        Ok(s.scale(&BigRational::new(1.into(), 2.into())))
    }

    /// The imaginary unit `ζ_N^{N/4}`; needs `4 | N`.
    pub fn imaginary_unit(field: &Arc<NumberField>) -> Result<FieldElement> {
        let n = cyclotomic_n(field)?;
        if n % 4 != 0 {
            return Err(FieldError::NoImaginaryUnit(field.to_string()));
        }
        FieldElement::generator(field).pow((n / 4) as i64)
    }

    /// `(z - conj z) / (2i)`
    pub fn imag_part(&self) -> Result<FieldElement> {
        let i = FieldElement::imaginary_unit(self.field())?;
        let d = self - &self.conj()?;
        // 1/(2i) = -i/2
        Ok((&d * &i).scale(&BigRational::new((-1).into(), 2.into())))
    }

    /// Move a real element of `ℚ(ζ_N)` into `ℚ(2cos 2π/N)` using
    /// `ζ^k + ζ^{-k} = V_k(ζ + ζ^{-1})`.
    pub fn to_real_subfield(&self) -> Result<FieldElement> {
        let f = self.field();
        let n = match f.kind() {
            FieldKind::RealCos(_) => return Ok(self.clone()),
            FieldKind::Cyclotomic(n) => n,
        };
        if self.conj()? != *self {
            return Err(FieldError::NotReal);
        }
        if n < 3 {
            return Err(FieldError::NoEmbedding(f.to_string(), format!("RealCos({n})")));
        }
        let target = make_real_cos_field(n)?;
        let (num, den) = self.scaled_parts();
        let v = lucas_v_polys(num.len());
        let mut acc = IntPoly::zero();
        for (c, vk) in num.iter().zip(&v) {
            if !c.is_zero() {
                acc = acc.add(&vk.scale(c));
            }
        }
        Ok(FieldElement::from_int_poly(&target, &acc).div_integer(&(den * BigInt::from(2))))
    }

    /// Evaluate the coefficient polynomial of `self` at `image`.
    fn eval_at(&self, image: &FieldElement) -> FieldElement {
        let coeffs = self.coeffs();
        let mut acc = FieldElement::zero(image.field());
        for c in coeffs.iter().rev() {
            acc = &(&acc * image) + &FieldElement::from_rational(image.field(), c);
        }
        acc
    }

    /// Embed into `target` when the generator maps canonically:
    /// `RealCos(n) → RealCos(m)`, `RealCos(n) → Cyclotomic(m)` and
    /// `Cyclotomic(n) → Cyclotomic(m)`, each for `n | m`.
    pub fn embed(&self, target: &Arc<NumberField>) -> Result<FieldElement> {
        let src = self.field().kind();
        let dst = target.kind();
        if src == dst {
            return Ok(self.clone());
        }
        let err = || FieldError::NoEmbedding(src.to_string(), dst.to_string());
        let image = match (src, dst) {
            (FieldKind::RealCos(n), FieldKind::RealCos(m)) if m % n == 0 => {
                let v = lucas_v_polys((m / n) as usize);
                FieldElement::from_int_poly(target, &v[(m / n) as usize])
            }
            (FieldKind::RealCos(n), FieldKind::Cyclotomic(m)) if m % n == 0 => {
                let z = FieldElement::generator(target).pow((m / n) as i64)?;
                &z + &z.inv()?
            }
            (FieldKind::Cyclotomic(n), FieldKind::Cyclotomic(m)) if m % n == 0 => {
                FieldElement::generator(target).pow((m / n) as i64)?
            }
            _ => return Err(err()),
        };
        Ok(self.eval_at(&image))
    }

    /// `λ ∈ ℚ(λ²)` test by power-basis parity; valid only for an even modulus.
    pub fn in_even_subfield(&self) -> Result<bool> {
        self.require_even_modulus()?;
        Ok(self.coeffs().iter().skip(1).step_by(2).all(Zero::is_zero))
    }

    /// Membership in `λ·ℚ(λ²)`; valid only for an even modulus.
    pub fn in_lambda_times_even_subfield(&self) -> Result<bool> {
        self.require_even_modulus()?;
        Ok(self.coeffs().iter().step_by(2).all(Zero::is_zero))
    }

    fn require_even_modulus(&self) -> Result<()> {
        if self.field().modulus().is_even() && self.field().degree() > 1 {
            Ok(())
        } else {
            Err(FieldError::OddModulus(self.field().to_string()))
        }
    }
}

/// Rationals `c_0..c_{d-1}` with `z = Σ c_j g^j`, if they exist.
pub fn subfield_membership(z: &FieldElement, g: &FieldElement, d: usize) -> Result<Option<Vec<BigRational>>> {
    z.check_same(g)?;
    let mut cols = Vec::with_capacity(d);
    let mut p = FieldElement::one(g.field());
    for _ in 0..d {
        cols.push(p.coeffs());
        p = &p * g;
    }
    Ok(linalg::solve(&cols, &z.coeffs()))
}

/// Coefficients `c` with `num = (Σ c_j g^j) · den`, i.e. membership of the
/// ratio `num/den` in `ℚ(g)` without inverting `den`.
pub fn ratio_membership(
    num: &FieldElement,
    den: &FieldElement,
    g: &FieldElement,
    d: usize,
) -> Result<Option<Vec<BigRational>>> {
    num.check_same(den)?;
    num.check_same(g)?;
    if den.is_zero() {
        return Err(FieldError::DivisionByZero);
    }
    let mut cols = Vec::with_capacity(d);
    let mut p = den.clone();
    for _ in 0..d {
        cols.push(p.coeffs());
        p = &p * g;
    }
    Ok(linalg::solve(&cols, &num.coeffs()))
}

/// Monic minimal polynomial of `z` over ℚ, from the first linear relation
/// among `1, z, z², …`.
pub fn minimal_polynomial(z: &FieldElement) -> RatPoly {
    let mut ech = Echelon::new();
    let mut p = FieldElement::one(z.field());
    loop {
        if let Some(rel) = ech.insert(p.coeffs()) {
            // z^k = Σ rel_j z^j
            let mut c: Vec<BigRational> = rel.into_iter().map(|x| -x).collect();
            c.push(BigRational::one());
            return RatPoly::new(c);
        }
        p = &p * z;
    }
}

/// `[ℚ(z) : ℚ]`
pub fn element_degree(z: &FieldElement) -> usize {
    let mut ech = Echelon::new();
    let mut p = FieldElement::one(z.field());
    loop {
        if ech.insert(p.coeffs()).is_some() {
            return ech.rank();
        }
        p = &p * z;
    }
}

/// `ζ_n^k` as an element of `ℚ(ζ_n)`.
pub fn root_of_unity(n: u64, k: i64) -> Result<FieldElement> {
    let f = make_cyclotomic_field(n)?;
    FieldElement::generator(&f).pow(k.rem_euclid(n as i64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_parts() {
        let f = make_cyclotomic_field(4).unwrap();
        let i = FieldElement::generator(&f);
        assert!(i.real_part().unwrap().is_zero());
        assert!(i.imag_part().unwrap().is_one());
        assert_eq!(i.conj().unwrap(), -&i);
    }

    #[test]
    fn unit_circle() {
        let f = make_cyclotomic_field(20).unwrap();
        let z = FieldElement::generator(&f);
        let re = z.real_part().unwrap();
        let im = z.imag_part().unwrap();
        assert!((&re * &re + &im * &im).is_one());
        let i = FieldElement::imaginary_unit(&f).unwrap();
        assert_eq!(&re + &(&i * &im), z);
    }

    #[test]
    fn self_conjugate_has_no_imaginary_part() {
        let f = make_cyclotomic_field(28).unwrap();
        let z2 = FieldElement::generator(&f).pow(2).unwrap();
        let w = &z2 + &z2.inv().unwrap();
        assert!(w.imag_part().unwrap().is_zero());
    }

    #[test]
    fn no_imaginary_unit() {
        let f = make_cyclotomic_field(10).unwrap();
        let z = FieldElement::generator(&f);
        assert!(matches!(z.imag_part(), Err(FieldError::NoImaginaryUnit(_))));
    }

    #[test]
    fn real_subfield_roundtrip() {
        let f = make_cyclotomic_field(20).unwrap();
        let z = FieldElement::generator(&f);
        let g = &z + &z.inv().unwrap();
        let r = g.to_real_subfield().unwrap();
        assert_eq!(r, FieldElement::generator(&make_real_cos_field(20).unwrap()));
        assert_eq!(r.embed(&f).unwrap(), g);
        assert_eq!(z.to_real_subfield(), Err(FieldError::NotReal));
    }

    #[test]
    fn membership_examples() {
        let f = make_cyclotomic_field(20).unwrap();
        let z = FieldElement::generator(&f);
        let g = &z.pow(4).unwrap() + &z.pow(-4).unwrap(); // 2cos(2π/5)
        let g2 = &g * &g;
        let c = subfield_membership(&g2, &g, 2).unwrap().unwrap();
        // g² = 1 - g for 2cos(2π/5)
        assert_eq!(c, vec![BigRational::one(), -BigRational::one()]);
        let c1 = &z + &z.inv().unwrap();
        assert!(subfield_membership(&c1, &g, 2).unwrap().is_none());
        let q = FieldElement::from_rational(&f, &BigRational::new(3.into(), 7.into()));
        let c = subfield_membership(&q, &g, 2).unwrap().unwrap();
        assert_eq!(c, vec![BigRational::new(3.into(), 7.into()), BigRational::zero()]);
    }

    #[test]
    fn parity_tests() {
        let f = make_real_cos_field(28).unwrap();
        let l = FieldElement::generator(&f);
        let l2 = l.pow(2).unwrap();
        let l3 = l.pow(3).unwrap();
        assert_eq!((l2.in_even_subfield().unwrap(), l2.in_lambda_times_even_subfield().unwrap()), (true, false));
        assert_eq!((l3.in_even_subfield().unwrap(), l3.in_lambda_times_even_subfield().unwrap()), (false, true));
        let odd = FieldElement::generator(&make_real_cos_field(14).unwrap());
        assert!(matches!(odd.in_even_subfield(), Err(FieldError::OddModulus(_))));
    }

    #[test]
    fn minpoly_of_elements() {
        let f = make_real_cos_field(28).unwrap();
        let l = FieldElement::generator(&f);
        assert_eq!(element_degree(&l), 6);
        assert_eq!(element_degree(&l.pow(2).unwrap()), 3);
        let mp = minimal_polynomial(&l);
        assert_eq!(mp, f.modulus().to_rat());
    }

    #[test]
    fn embeddings_preserve_values() {
        let l7 = FieldElement::generator(&make_real_cos_field(14).unwrap());
        let big = make_real_cos_field(28).unwrap();
        let e = l7.embed(&big).unwrap();
        assert!((e.to_f64() - l7.to_f64()).abs() < 1e-12);
        let cyc = make_cyclotomic_field(56).unwrap();
        let c = l7.embed(&cyc).unwrap();
        assert!((c.to_complex_f64().0 - l7.to_f64()).abs() < 1e-12);
        assert!(l7.embed(&make_real_cos_field(15).unwrap()).is_err());
    }
}
