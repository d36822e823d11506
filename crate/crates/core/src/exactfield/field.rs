use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::approx::DyadicInterval;
use super::{FieldError, Result};
use crate::arith;
use crate::poly::{cyclotomic_polynomial, real_cos_minpoly, IntPoly};

/// Which field: `ℚ(ζ_N)` or `ℚ(2cos 2π/n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", content = "n", rename_all = "lowercase")]
pub enum FieldKind {
    Cyclotomic(u64),
    #[serde(rename = "realcos")]
    RealCos(u64),
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Cyclotomic(n) => write!(f, "Q(zeta_{n})"),
            FieldKind::RealCos(n) => write!(f, "Q(2cos(2pi/{n}))"),
        }
    }
}

/// A root of the field modulus together with the embedding it defines.
#[derive(Clone, Debug)]
pub enum ConjugateRoot {
    /// The real root `2cos(2πk/n)`, isolated by a rational interval that
    /// contains no other root of the modulus.
    Real {
        exponent: u64,
        lo: BigRational,
        hi: BigRational,
    },
    /// The complex root `e^{2πik/N}`; the box is a floating-point
    /// approximation and is not used for decisions.
    Complex { exponent: u64, re: f64, im: f64 },
}

impl ConjugateRoot {
    pub fn exponent(&self) -> u64 {
        match self {
            ConjugateRoot::Real { exponent, .. } | ConjugateRoot::Complex { exponent, .. } => {
                *exponent
            }
        }
    }
}

pub struct NumberField {
    kind: FieldKind,
    modulus: IntPoly,
    degree: usize,
    conjugates: Vec<ConjugateRoot>,
    refined: Mutex<HashMap<(usize, u32), DyadicInterval>>,
    pub(super) conj_images: OnceLock<Vec<Vec<BigInt>>>,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NumberField")
            .field("kind", &self.kind)
            .field("modulus", &self.modulus.to_string())
            .finish()
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for NumberField {}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.kind.fmt(f)
    }
}

fn registry() -> &'static Mutex<HashMap<FieldKind, Arc<NumberField>>> {
    static REGISTRY: OnceLock<Mutex<HashMap<FieldKind, Arc<NumberField>>>> = OnceLock::new();
    REGISTRY.get_or_init(Default::default)
}

fn get_or_build(kind: FieldKind) -> Arc<NumberField> {
    if let Some(f) = registry().lock().unwrap().get(&kind) {
        return f.clone();
    }
    // Built outside the lock; a racing duplicate is discarded below.
    let built = Arc::new(NumberField::build(kind));
    registry().lock().unwrap().entry(kind).or_insert(built).clone()
}

/// `ℚ(2cos 2π/n)` for `n >= 3`. The generator is `2cos(2π/n)`; in
/// particular `λ_q = 2cos(π/q)` is the generator of `make_real_cos_field(2q)`.
pub fn make_real_cos_field(n: u64) -> Result<Arc<NumberField>> {
    if n < 3 {
        return Err(FieldError::InvalidField(format!("RealCos({n}) needs n >= 3")));
    }
    Ok(get_or_build(FieldKind::RealCos(n)))
}

/// `ℚ(ζ_N)` with generator `ζ_N = e^{2πi/N}`.
pub fn make_cyclotomic_field(n: u64) -> Result<Arc<NumberField>> {
    if n < 1 {
        return Err(FieldError::InvalidField("Cyclotomic(0)".into()));
    }
    Ok(get_or_build(FieldKind::Cyclotomic(n)))
}

impl NumberField {
    pub fn from_kind(kind: FieldKind) -> Result<Arc<NumberField>> {
        match kind {
            FieldKind::Cyclotomic(n) => make_cyclotomic_field(n),
            FieldKind::RealCos(n) => make_real_cos_field(n),
        }
    }

    fn build(kind: FieldKind) -> NumberField {
        let (modulus, conjugates) = match kind {
            FieldKind::RealCos(n) => {
                let m = real_cos_minpoly(n);
                let c = isolate_cos_roots(n, &m);
                (m, c)
            }
            FieldKind::Cyclotomic(n) => {
                let m = cyclotomic_polynomial(n);
                let c = arith::units_mod(n)
                    .into_iter()
                    .map(|k| {
                        let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
                        ConjugateRoot::Complex { exponent: k, re: t.cos(), im: t.sin() }
                    })
                    .collect::<Vec<_>>();
                // N = 1: the single root 1 (units_mod(1) is [1])
                (m, c)
            }
        };
        let degree = modulus.degree().expect("modulus is nonzero");
        assert_eq!(conjugates.len(), degree, "conjugate count for {kind}");
        NumberField {
            kind,
            modulus,
            degree,
            conjugates,
            refined: Mutex::new(HashMap::new()),
            conj_images: OnceLock::new(),
        }
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn modulus(&self) -> &IntPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// All roots of the modulus; index 0 is the defining embedding.
    pub fn conjugate_roots(&self) -> &[ConjugateRoot] {
        &self.conjugates
    }

    pub fn generator_value(&self) -> &ConjugateRoot {
        &self.conjugates[0]
    }

    pub fn is_totally_real(&self) -> bool {
        match self.kind {
            FieldKind::RealCos(_) => true,
            FieldKind::Cyclotomic(n) => n <= 2,
        }
    }

    /// The `n` of `RealCos(n)` or `Cyclotomic(n)`.
    pub fn conductor(&self) -> u64 {
        match self.kind {
            FieldKind::RealCos(n) | FieldKind::Cyclotomic(n) => n,
        }
    }

    /// Certified enclosure of the real conjugate `index` with width at most
    /// a few units of `2^-prec`.
    pub fn refined_root(&self, index: usize, prec: u32) -> Result<DyadicInterval> {
        if let Some(iv) = self.refined.lock().unwrap().get(&(index, prec)) {
            return Ok(iv.clone());
        }
        let ConjugateRoot::Real { exponent, lo, hi } = &self.conjugates[index] else {
            return Err(FieldError::NotTotallyReal(self.kind.to_string()));
        };
        let n = self.conductor();
        let guess = 2.0 * (2.0 * std::f64::consts::PI * *exponent as f64 / n as f64).cos();
        let iv = refine_root(&self.modulus, guess, lo, hi, prec);
        self.refined.lock().unwrap().insert((index, prec), iv.clone());
        Ok(iv)
    }
}

/// Isolating intervals for the roots `2cos(2πk/n)` of `m`: small rational
/// boxes around the floating-point values, each certified by a sign change.
/// Since there are exactly `deg m` disjoint boxes, each holds one root.
fn isolate_cos_roots(n: u64, m: &IntPoly) -> Vec<ConjugateRoot> {
    let ks: Vec<u64> = arith::units_mod(n).into_iter().filter(|&k| 2 * k < n).collect();
    let vals: Vec<f64> = ks
        .iter()
        .map(|&k| 2.0 * (2.0 * std::f64::consts::PI * k as f64 / n as f64).cos())
        .collect();
    let mut sorted = vals.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let gap = sorted.windows(2).map(|w| w[1] - w[0]).fold(1.0f64, f64::min);
    let radius = (gap / 4.0).min(1e-3);
    assert!(radius > 1e-12, "roots of RealCos({n}) too close for f64 isolation");
    ks.iter()
        .zip(&vals)
        .map(|(&k, &v)| {
            let lo = BigRational::from_float(v - radius).unwrap();
            let hi = BigRational::from_float(v + radius).unwrap();
            let (sl, sh) = (rat_sign(&m.eval_rational(&lo)), rat_sign(&m.eval_rational(&hi)));
            assert!(sl * sh < 0, "failed to isolate 2cos(2pi*{k}/{n})");
            ConjugateRoot::Real { exponent: k, lo, hi }
        })
        .collect()
}

fn rat_sign(x: &BigRational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Evaluate `m` at `x / 2^prec` in fixed point, returning about `m(x)·2^prec`.
fn fixed_eval(m: &IntPoly, x: &BigInt, prec: u32) -> BigInt {
    m.coeffs()
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| ((acc * x) >> prec) + (c << prec))
}

fn dyadic_in(x: &BigInt, prec: u32, lo: &BigRational, hi: &BigRational) -> bool {
    let v = BigRational::new(x.clone(), BigInt::one() << prec);
    &v >= lo && &v <= hi
}

/// Newton iteration in fixed point followed by a sign-change certificate;
/// falls back to exact bisection if certification fails.
fn refine_root(m: &IntPoly, guess: f64, lo: &BigRational, hi: &BigRational, prec: u32) -> DyadicInterval {
    let work = prec + 32;
    let dm = m.derivative();
    let mut x = BigInt::from((guess * 2f64.powi(52)).round() as i64) << (work - 52);
    if m.degree() == Some(1) {
        // root = -c0 (monic); exact
        let r = -m.coeff(0);
        let x = r << prec;
        return DyadicInterval::new(x.clone(), x, prec);
    }
    let iters = ((work as f64 / 40.0).log2().ceil() as i32).max(0) + 3;
    for _ in 0..iters {
        let f = fixed_eval(m, &x, work);
        let df = fixed_eval(&dm, &x, work);
        if df.is_zero() {
            break;
        }
        x -= (f << work) / df;
    }
    let xp = x >> (work - prec);
    let mut r = BigInt::from(4);
    for _ in 0..6 {
        let a = &xp - &r;
        let b = &xp + &r;
        let (sa, sb) = (m.sign_at_dyadic(&a, prec), m.sign_at_dyadic(&b, prec));
        if sa * sb < 0 && dyadic_in(&a, prec, lo, hi) && dyadic_in(&b, prec, lo, hi) {
            return DyadicInterval::new(a, b, prec);
        }
        r <<= 4;
    }
    bisect_root(m, lo, hi, prec)
}

fn bisect_root(m: &IntPoly, lo: &BigRational, hi: &BigRational, prec: u32) -> DyadicInterval {
    let scale = BigRational::from(BigInt::one() << prec);
    let mut a = (lo * &scale).ceil().to_integer();
    let mut b = (hi * &scale).floor().to_integer();
    let sa = m.sign_at_dyadic(&a, prec);
    if sa == 0 {
        return DyadicInterval::new(a.clone(), a, prec);
    }
    while &b - &a > BigInt::one() {
        let mid: BigInt = (&a + &b).div_floor(&BigInt::from(2));
        let s = m.sign_at_dyadic(&mid, prec);
        if s == 0 {
            return DyadicInterval::new(mid.clone(), mid, prec);
        }
        if s == sa {
            a = mid;
        } else {
            b = mid;
        }
    }
    // the endpoints inside the rational box may have lost the sign change
    // only if the box boundary is not dyadic; widen by one ulp
    DyadicInterval::new(a - 1, b + 1, prec)
}

/// Floating-point value of a real conjugate, for display only.
pub(crate) fn approx_root(root: &ConjugateRoot) -> f64 {
    match root {
        ConjugateRoot::Real { lo, hi, .. } => {
            ((lo + hi) / BigRational::from_integer(2.into())).to_f64().unwrap_or(f64::NAN)
        }
        ConjugateRoot::Complex { re, .. } => *re,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees() {
        assert_eq!(make_real_cos_field(28).unwrap().degree(), 6);
        assert_eq!(make_real_cos_field(7).unwrap().degree(), 3);
        assert_eq!(make_cyclotomic_field(20).unwrap().degree(), 8);
        assert_eq!(make_cyclotomic_field(1).unwrap().degree(), 1);
        assert_eq!(make_cyclotomic_field(4).unwrap().modulus(), &IntPoly::from_i64(&[1, 0, 1]));
        assert!(make_real_cos_field(2).is_err());
    }

    #[test]
    fn registry_shares_fields() {
        let a = make_real_cos_field(14).unwrap();
        let b = make_real_cos_field(14).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
    }

    #[test]
    fn refined_root_is_tight_and_certified() {
        let f = make_real_cos_field(28).unwrap();
        for prec in [64u32, 256, 1024] {
            let iv = f.refined_root(0, prec).unwrap();
            assert!(iv.width_ulps() <= BigInt::from(8));
            let (a, b) = iv.bounds_scaled();
            let s1 = f.modulus().sign_at_dyadic(a, prec);
            let s2 = f.modulus().sign_at_dyadic(b, prec);
            assert!(s1 * s2 <= 0);
        }
        let v = f.refined_root(0, 64).unwrap().midpoint_f64();
        assert!((v - 2.0 * (std::f64::consts::PI / 14.0).cos()).abs() < 1e-15);
    }

    #[test]
    fn conjugates_disjoint() {
        for n in 3..120u64 {
            let f = make_real_cos_field(n).unwrap();
            let mut boxes: Vec<(BigRational, BigRational)> = f
                .conjugate_roots()
                .iter()
                .map(|c| match c {
                    ConjugateRoot::Real { lo, hi, .. } => (lo.clone(), hi.clone()),
                    _ => unreachable!(),
                })
                .collect();
            boxes.sort();
            for w in boxes.windows(2) {
                assert!(w[0].1 < w[1].0, "overlap for n = {n}");
            }
            assert_eq!(boxes.len() as u64, arith::totient(n) / 2);
        }
    }
}
