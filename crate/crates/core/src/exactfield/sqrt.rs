//! Square roots inside totally real fields.
//!
//! A square root `s` of `d` is determined by its conjugate values
//! `±√σ_k(d)`. For each sign pattern (the defining embedding taken
//! positive) the power-basis coefficients are recovered from the conjugate
//! values through an inverse Vandermonde matrix, rounded to nearby rationals
//! and checked by exact squaring.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::element::FieldElement;
use super::field::{make_cyclotomic_field, FieldKind};
use super::{FieldError, Result};
use crate::linalg;

/// Working precisions (bits) tried in order.
pub const SQRT_PRECISION_TIERS: [u32; 3] = [128, 512, 2048];

/// Largest denominator accepted during rational reconstruction, `10^50`.
pub static SQRT_DENOMINATOR_BOUND: std::sync::LazyLock<BigInt> =
    std::sync::LazyLock::new(|| BigInt::from(10u32).pow(50));

/// Sign patterns are enumerated exhaustively only up to this degree.
const MAX_PATTERN_DEGREE: usize = 20;

/// Primes below this bound are tried as residue obstructions.
const RESIDUE_PRIME_BOUND: u64 = 600;

/// `s·s = d` exactly.
pub fn verify_sqrt(d: &FieldElement, s: &FieldElement) -> Result<bool> {
    Ok(s.checked_mul(s)? == *d)
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| BigRational::new(sn, sd))
}

/// Norm of `x` as the determinant of multiplication by `x`.
fn norm(x: &FieldElement) -> BigRational {
    let mut cols = Vec::new();
    let mut p = x.clone();
    let g = FieldElement::generator(x.field());
    for _ in 0..x.field().degree() {
        cols.push(p.coeffs());
        p = &p * &g;
    }
    linalg::determinant(cols)
}

fn mod_p(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).try_into().expect("residue fits")
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn horner_mod(c: &[u64], r: u64, p: u64) -> u64 {
    c.iter().rev().fold(0, |acc, &a| (acc * r + a) % p)
}

/// A degree-one prime `(p, θ − r)` at which `x` reduces to a quadratic
/// non-residue. The power basis spans the ring of integers of a real
/// cyclotomic field, so such a prime proves `x` is not a square.
fn residue_obstruction(x: &FieldElement) -> bool {
    let (num, den) = x.scaled_parts();
    let modulus = x.field().modulus();
    let deriv = modulus.derivative();
    for p in (3..RESIDUE_PRIME_BOUND).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)) {
        if mod_p(den, p) == 0 {
            continue;
        }
        let m: Vec<u64> = modulus.coeffs().iter().map(|c| mod_p(c, p)).collect();
        let dm: Vec<u64> = deriv.coeffs().iter().map(|c| mod_p(c, p)).collect();
        let n: Vec<u64> = num.iter().map(|c| mod_p(c, p)).collect();
        // num/den and num·den have the same quadratic character
        let d = mod_p(den, p);
        for r in 0..p {
            if horner_mod(&m, r, p) != 0 || horner_mod(&dm, r, p) == 0 {
                continue;
            }
            let v = horner_mod(&n, r, p) * d % p;
            if v != 0 && pow_mod(v, (p - 1) / 2, p) == p - 1 {
                return true;
            }
        }
    }
    false
}

/// Best rational approximation of `x / 2^prec` whose error is below
/// `2^{-prec/2}`, with denominator at most the bound.
fn reconstruct(x: &BigInt, prec: u32) -> Option<BigRational> {
    let one = BigInt::one();
    let scale = &one << prec;
    let tol = BigRational::new(one.clone(), &one << (prec / 2));
    let target = BigRational::new(x.clone(), scale);
    // continued fraction convergents
    let (mut p0, mut q0, mut p1, mut q1) = (BigInt::zero(), one.clone(), one.clone(), BigInt::zero());
    let mut rem = target.clone();
    loop {
        let a = rem.floor().to_integer();
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        if q2 > *SQRT_DENOMINATOR_BOUND {
            return None;
        }
        let c = BigRational::new(p2.clone(), q2.clone());
        if (&c - &target).abs() < tol {
            return Some(c);
        }
        let frac = &rem - BigRational::from_integer(a);
        if frac.is_zero() {
            return Some(c);
        }
        rem = frac.recip();
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
}

impl FieldElement {
    /// The nonnegative square root of `self` in its field, if one is found.
    ///
    /// `None` after the last precision tier means the search failed; it is
    /// a proof of nonexistence only when some conjugate is negative, the
    /// norm is not a rational square, or a residue obstruction was found.
    pub fn sqrt_in_field(&self) -> Result<Option<FieldElement>> {
        // a rational without a rational root may still have one in the field
        if let Some(s) = self.as_rational().and_then(|r| rational_sqrt(&r)) {
            return Ok(Some(FieldElement::from_rational(self.field(), &s)));
        }
        let field = self.field().clone();
        if let FieldKind::Cyclotomic(n) = field.kind() {
            // real elements: work in the maximal real subfield
            let r = self.to_real_subfield()?;
            let target = make_cyclotomic_field(n)?;
            return Ok(r.sqrt_in_field()?.map(|s| s.embed(&target)).transpose()?);
        }
        let deg = field.degree();
        for k in 0..deg {
            if self.sign_at(k)? < 0 {
                return Ok(None);
            }
        }
        if rational_sqrt(&norm(self).abs()).is_none() || residue_obstruction(self) {
            return Ok(None);
        }
        if deg > MAX_PATTERN_DEGREE {
            return Ok(None);
        }
        for &prec in &SQRT_PRECISION_TIERS {
            if let Some(s) = self.sqrt_at_precision(prec)? {
                return Ok(Some(s));
            }
        }
        Ok(None)
    }

    fn sqrt_at_precision(&self, prec: u32) -> Result<Option<FieldElement>> {
        let field = self.field().clone();
        let deg = field.degree();
        let work = prec + 64;
        let one_w = BigInt::one() << work;
        let roots: Vec<BigInt> = (0..deg)
            .map(|k| field.refined_root(k, work).map(|iv| iv.midpoint_scaled()))
            .collect::<Result<_>>()?;
        let vals: Vec<BigInt> = (0..deg)
            .map(|k| self.eval_conjugate(k, work).map(|iv| iv.sqrt().midpoint_scaled()))
            .collect::<Result<_>>()?;
        // Vandermonde V[k][j] = r_k^j as exact dyadic rationals; inverse once
        let denom = BigRational::from_integer(one_w.clone());
        let rows: Vec<Vec<BigRational>> = roots
            .iter()
            .map(|r| {
                let x = BigRational::new(r.clone(), one_w.clone());
                let mut p = BigRational::one();
                (0..deg)
                    .map(|_| {
                        let out = p.clone();
                        p *= &x;
                        out
                    })
                    .collect()
            })
            .collect();
        // column e_k of the inverse solves V c = e_k
        let cols: Vec<Vec<BigRational>> =
            (0..deg).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect();
        let mut inv_fixed: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); deg]; deg];
        for k in 0..deg {
            let mut e = vec![BigRational::zero(); deg];
            e[k] = BigRational::one();
            let Some(c) = linalg::solve(&cols, &e) else {
                return Err(FieldError::PrecisionExhausted);
            };
            for j in 0..deg {
                inv_fixed[j][k] = (&c[j] * &denom).round().to_integer();
            }
        }
        let patterns = 1u64 << (deg - 1);
        for mask in 0..patterns {
            let signed: Vec<BigInt> = vals
                .iter()
                .enumerate()
                .map(|(k, v)| if k > 0 && (mask >> (k - 1)) & 1 == 1 { -v } else { v.clone() })
                .collect();
            let mut coeffs = Vec::with_capacity(deg);
            for row in &inv_fixed {
                let acc: BigInt = row.iter().zip(&signed).map(|(a, b)| a * b).sum();
                // acc ≈ c · 2^{2·work}
                let scaled = acc.div_floor(&(BigInt::one() << (2 * work - prec)));
                match reconstruct(&scaled, prec) {
                    Some(c) => coeffs.push(c),
                    None => break,
                }
            }
            if coeffs.len() != deg {
                continue;
            }
            let s = FieldElement::from_coeffs(&field, &coeffs)?;
            if verify_sqrt(self, &s)? {
                return Ok(Some(if s.sign()? < 0 { -s } else { s }));
            }
        }
        Ok(None)
    }
}
