use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::approx::DyadicInterval;
use super::field::{approx_root, NumberField};
use super::{FieldError, Result};
use crate::poly::{common_denominator, IntPoly, RatPoly};

/// Precision cap for sign and floor decisions. Reaching it on a nonzero
/// element means an enclosure bound is broken.
const MAX_PREC: u32 = 1 << 16;
const START_PREC: u32 = 64;

/// An element of a [`NumberField`], stored as `num / den` in the power
/// basis of the generator. `den > 0` and the content of `num` is coprime
/// to `den`, so equality is structural.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<NumberField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.kind() == other.field.kind() && self.den == other.den && self.num == other.num
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.kind().hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl FieldElement {
    fn normalized(field: Arc<NumberField>, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        debug_assert_eq!(num.len(), field.degree());
        if den.is_negative() {
            den = -den;
            num.iter_mut().for_each(|c| *c = -&*c);
        }
        let g = num.iter().fold(den.clone(), |g, c| g.gcd(c));
        if !g.is_one() && !g.is_zero() {
            num.iter_mut().for_each(|c| *c = &*c / &g);
            den /= &g;
        }
        if num.iter().all(Zero::is_zero) {
            den = BigInt::one();
        }
        FieldElement { field, num, den }
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        FieldElement { field: field.clone(), num: vec![BigInt::zero(); field.degree()], den: BigInt::one() }
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::from_int(field, 1)
    }

    pub fn from_int(field: &Arc<NumberField>, n: i64) -> Self {
        Self::from_rational(field, &BigRational::from_integer(n.into()))
    }

    pub fn from_rational(field: &Arc<NumberField>, r: &BigRational) -> Self {
        let mut num = vec![BigInt::zero(); field.degree()];
        num[0] = r.numer().clone();
        Self::normalized(field.clone(), num, r.denom().clone())
    }

    /// The power-basis generator (`λ` for real cosine fields, `ζ` for
    /// cyclotomic ones).
    pub fn generator(field: &Arc<NumberField>) -> Self {
        Self::from_int_poly(field, &IntPoly::x())
    }

    /// Reduce an integer polynomial in the generator.
    pub fn from_int_poly(field: &Arc<NumberField>, p: &IntPoly) -> Self {
        let r = p.rem_monic(field.modulus());
        let mut num = r.coeffs().to_vec();
        num.resize(field.degree(), BigInt::zero());
        Self::normalized(field.clone(), num, BigInt::one())
    }

    /// Reduce a rational polynomial in the generator.
    pub fn from_rat_poly(field: &Arc<NumberField>, p: &RatPoly) -> Self {
        let den = common_denominator(p.coeffs());
        let ip = IntPoly::new(p.coeffs().iter().map(|c| (c * &den).to_integer()).collect());
        let mut e = Self::from_int_poly(field, &ip);
        e = e.div_integer(&den);
        e
    }

    /// Build from exactly `degree` power-basis coefficients.
    pub fn from_coeffs(field: &Arc<NumberField>, coeffs: &[BigRational]) -> Result<Self> {
        if coeffs.len() != field.degree() {
            return Err(FieldError::CoefficientCount { expected: field.degree(), got: coeffs.len() });
        }
        let den = common_denominator(coeffs);
        let num = coeffs.iter().map(|c| (c * &den).to_integer()).collect();
        Ok(Self::normalized(field.clone(), num, den))
    }

    pub fn from_i64_coeffs(field: &Arc<NumberField>, coeffs: &[i64]) -> Self {
        Self::from_int_poly(field, &IntPoly::from_i64(coeffs))
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num.iter().map(|c| BigRational::new(c.clone(), self.den.clone())).collect()
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        BigRational::new(self.num[i].clone(), self.den.clone())
    }

    /// Integer numerators and the common denominator.
    pub fn scaled_parts(&self) -> (&[BigInt], &BigInt) {
        (&self.num, &self.den)
    }

    pub fn to_rat_poly(&self) -> RatPoly {
        RatPoly::new(self.coeffs())
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.is_rational() && self.num[0] == self.den
    }

    /// True iff the element lies in ℚ.
    pub fn is_rational(&self) -> bool {
        self.num.iter().skip(1).all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    /// All coefficients are integers, i.e. the element lies in ℤ[generator].
    pub fn is_integral_poly(&self) -> bool {
        self.den.is_one()
    }

    pub(crate) fn check_same(&self, other: &Self) -> Result<()> {
        if self.field.kind() == other.field.kind() {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch(self.field.to_string(), other.field.to_string()))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.add_impl(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.add_impl(other, true))
    }

    fn add_impl(&self, other: &Self, subtract: bool) -> Self {
        let l = self.den.lcm(&other.den);
        let fa = &l / &self.den;
        let fb = &l / &other.den;
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| if subtract { a * &fa - b * &fb } else { a * &fa + b * &fb })
            .collect();
        Self::normalized(self.field.clone(), num, l)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let d = self.field.degree();
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let r = IntPoly::new(prod).rem_monic(self.field.modulus());
        let mut num = r.coeffs().to_vec();
        num.resize(d, BigInt::zero());
        Ok(Self::normalized(self.field.clone(), num, &self.den * &other.den))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inv()?)
    }

    /// Multiplicative inverse by the extended Euclidean algorithm on the
    /// coefficient polynomial and the modulus.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if self.is_rational() {
            let r = self.as_rational().unwrap().recip();
            return Ok(Self::from_rational(&self.field, &r));
        }
        let m = self.field.modulus().to_rat();
        let inv = self.to_rat_poly().inverse_mod(&m).ok_or(FieldError::DivisionByZero)?;
        Ok(Self::from_rat_poly(&self.field, &inv))
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        Self::normalized(self.field.clone(), num, &self.den * r.denom())
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&BigRational::from_integer(k.into()))
    }

    pub fn div_integer(&self, k: &BigInt) -> Self {
        Self::normalized(self.field.clone(), self.num.clone(), &self.den * k)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Evaluate the coefficient polynomial at the `index`-th real conjugate.
    pub fn eval_conjugate(&self, index: usize, prec: u32) -> Result<DyadicInterval> {
        let g = self.field.refined_root(index, prec)?;
        let mut acc = DyadicInterval::exact_int(&BigInt::zero(), prec);
        for c in self.num.iter().rev() {
            acc = acc.mul(&g).add_int(c);
        }
        Ok(acc.div_int(&self.den))
    }

    /// Sign under the real embedding `index` (0 is the defining one).
    pub fn sign_at(&self, index: usize) -> Result<i32> {
        if self.is_rational() {
            return Ok(crate::poly::sign_of(&self.num[0]));
        }
        if !self.field.is_totally_real() {
            return Err(FieldError::NotTotallyReal(self.field.to_string()));
        }
        let mut prec = START_PREC;
        while prec <= MAX_PREC {
            if let Some(s) = self.eval_conjugate(index, prec)?.sign() {
                return Ok(s);
            }
            prec *= 2;
        }
        Err(FieldError::PrecisionExhausted)
    }

    /// Exact sign under the defining real embedding.
    ///
    /// For cyclotomic fields the element must be real; it is first moved to
    /// the maximal real subfield.
    pub fn sign(&self) -> Result<i32> {
        if self.is_rational() {
            return Ok(crate::poly::sign_of(&self.num[0]));
        }
        if !self.field.is_totally_real() {
            return self.to_real_subfield()?.sign_at(0);
        }
        self.sign_at(0)
    }

    /// `⌊x⌋` under the defining embedding.
    pub fn floor(&self) -> Result<BigInt> {
        if let Some(r) = self.as_rational() {
            return Ok(r.floor().to_integer());
        }
        if !self.field.is_totally_real() {
            return self.to_real_subfield()?.floor();
        }
        // irrational, so never an integer and refinement terminates
        let mut prec = START_PREC;
        while prec <= MAX_PREC {
            if let Some(f) = self.eval_conjugate(0, prec)?.floor() {
                return Ok(f);
            }
            prec *= 2;
        }
        Err(FieldError::PrecisionExhausted)
    }

    /// `⌊x/u + 1/2⌋`: nearest integer to `x/u`, ties toward +∞.
    pub fn nearest_integer(&self, u: &Self) -> Result<BigInt> {
        let half = BigRational::new(1.into(), 2.into());
        let y = self.checked_div(u)?;
        (&y + &Self::from_rational(&self.field, &half)).floor()
    }

    /// Exact comparison under the defining embedding.
    pub fn cmp_real(&self, other: &Self) -> Result<Ordering> {
        Ok(match self.checked_sub(other)?.sign()? {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        })
    }

    /// Approximate value of the defining embedding, for display only.
    pub fn to_f64(&self) -> f64 {
        if let Some(r) = self.as_rational() {
            return num_traits::ToPrimitive::to_f64(&r).unwrap_or(f64::NAN);
        }
        if self.field.is_totally_real() {
            return self.eval_conjugate(0, 128).map(|iv| iv.midpoint_f64()).unwrap_or(f64::NAN);
        }
        self.to_complex_f64().0
    }

    /// Decimal rendering with `digits` places after the point, for display
    /// only. Complex values print as `re + im*i`.
    pub fn approx_decimal(&self, digits: usize) -> Result<String> {
        if let Some(r) = self.as_rational() {
            let scaled = r * BigRational::from_integer(BigInt::from(10).pow(digits as u32));
            return Ok(fmt_fixed(&scaled.round().to_integer(), digits));
        }
        if self.field.is_totally_real() {
            let prec = 4 * digits as u32 + 32;
            let m = self.eval_conjugate(0, prec)?.midpoint_scaled() * BigInt::from(10).pow(digits as u32);
            let half = BigInt::one() << (prec - 1);
            return Ok(fmt_fixed(&((m + half) >> prec), digits));
        }
        let z = match self.field.kind() {
            super::FieldKind::Cyclotomic(n) if n % 4 != 0 => {
                self.embed(&super::make_cyclotomic_field(n.lcm(&4))?)?
            }
            _ => self.clone(),
        };
        let (re, im) = (z.real_part()?.to_real_subfield()?, z.imag_part()?.to_real_subfield()?);
        if im.is_zero() {
            return re.approx_decimal(digits);
        }
        let im_s = im.approx_decimal(digits)?;
        Ok(match im_s.strip_prefix('-') {
            Some(m) => format!("{} - {m}*i", re.approx_decimal(digits)?),
            None => format!("{} + {im_s}*i", re.approx_decimal(digits)?),
        })
    }

    /// Approximate complex value (cyclotomic fields), for display only.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        match self.field.generator_value() {
            super::ConjugateRoot::Complex { re, im, .. } => {
                let (mut ar, mut ai) = (0.0, 0.0);
                for c in self.coeffs().iter().rev() {
                    let cf = num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::NAN);
                    let (nr, ni) = (ar * re - ai * im + cf, ar * im + ai * re);
                    ar = nr;
                    ai = ni;
                }
                (ar, ai)
            }
            root => {
                let g = approx_root(root);
                let v = self
                    .coeffs()
                    .iter()
                    .rev()
                    .fold(0.0, |acc, c| acc * g + num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::NAN));
                (v, 0.0)
            }
        }
    }

    /// Render as a polynomial in `var` with rational coefficients.
    pub fn render(&self, var: &str) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag_s = mag.to_string();
            match (i, mag.is_one()) {
                (0, _) => out.push_str(&mag_s),
                (1, true) => out.push_str(var),
                (1, false) => out.push_str(&format!("{mag_s}*{var}")),
                (_, true) => out.push_str(&format!("{var}^{i}")),
                (_, false) => out.push_str(&format!("{mag_s}*{var}^{i}")),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Default variable name: `l` for real cosine fields, `z` for cyclotomic.
    pub fn default_var(&self) -> &'static str {
        match self.field.kind() {
            super::FieldKind::RealCos(_) => "l",
            super::FieldKind::Cyclotomic(_) => "z",
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(self.default_var()))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.field.kind())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            /// Panics on field mismatch; use the `checked_*` form to recover.
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect(concat!("FieldElement::", stringify!($m)))
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
        impl $tr<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// `n / 10^digits` as a fixed-point decimal string.
fn fmt_fixed(n: &BigInt, digits: usize) -> String {
    let s = n.abs().to_string();
    let s = format!("{s:0>width$}", width = digits + 1);
    let (int, frac) = s.split_at(s.len() - digits);
    let sign = if n.is_negative() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

#[cfg(test)]
mod tests {
    use super::super::{make_cyclotomic_field, make_real_cos_field};
    use super::*;

    fn lam14() -> (Arc<NumberField>, FieldElement) {
        let f = make_real_cos_field(28).unwrap();
        let l = FieldElement::generator(&f);
        (f, l)
    }

    #[test]
    fn ring_basics() {
        let (f, l) = lam14();
        let l2 = &l * &l;
        assert_eq!(l2, FieldElement::from_i64_coeffs(&f, &[0, 0, 1]));
        // λ^6 = 7λ^4 - 14λ^2 + 7
        assert_eq!(l.pow(6).unwrap(), FieldElement::from_i64_coeffs(&f, &[7, 0, -14, 0, 7]));
        assert!((&l + &(-&l)).is_zero());
    }

    #[test]
    fn inverses() {
        let (f, l) = lam14();
        assert!(FieldElement::one(&f).inv().unwrap().is_one());
        assert!((&l.inv().unwrap() * &l).is_one());
        let x = &l.pow(4).unwrap() - &FieldElement::from_int(&f, 12);
        assert!((&x * &x.inv().unwrap()).is_one());
        assert_eq!(FieldElement::zero(&f).inv(), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn signs() {
        let (f, l) = lam14();
        assert_eq!(FieldElement::zero(&f).sign().unwrap(), 0);
        assert_eq!((&l - &FieldElement::one(&f)).sign().unwrap(), 1);
        assert_eq!((&l - &FieldElement::from_int(&f, 2)).sign().unwrap(), -1);
        // tiny positive: 2 - λ_14 ≈ 0.0495
        let tiny = (FieldElement::from_int(&f, 2) - &l).pow(10).unwrap();
        assert_eq!(tiny.sign().unwrap(), 1);
    }

    #[test]
    fn nearest() {
        let f = make_real_cos_field(14).unwrap();
        let l = FieldElement::generator(&f);
        assert_eq!(l.nearest_integer(&l).unwrap(), BigInt::from(1));
        assert_eq!(FieldElement::zero(&f).nearest_integer(&l).unwrap(), BigInt::zero());
        let x = &(&l * &l) - &FieldElement::one(&f);
        assert_eq!(x.nearest_integer(&l).unwrap(), BigInt::from(1));
        // tie: x/u = 1/2 exactly rounds up
        let half_l = l.scale(&BigRational::new(1.into(), 2.into()));
        assert_eq!(half_l.nearest_integer(&l).unwrap(), BigInt::from(1));
        assert_eq!((-half_l).nearest_integer(&l).unwrap(), BigInt::zero());
    }

    #[test]
    fn mismatch_is_reported() {
        let a = FieldElement::one(&make_real_cos_field(14).unwrap());
        let b = FieldElement::one(&make_real_cos_field(28).unwrap());
        assert!(matches!(a.checked_add(&b), Err(FieldError::FieldMismatch(..))));
    }

    #[test]
    fn cyclotomic_arith() {
        let f = make_cyclotomic_field(4).unwrap();
        let i = FieldElement::generator(&f);
        assert_eq!(&i * &i, FieldElement::from_int(&f, -1));
        let f20 = make_cyclotomic_field(20).unwrap();
        let z = FieldElement::generator(&f20);
        assert!(z.pow(20).unwrap().is_one());
        assert!(!z.pow(10).unwrap().is_one());
    }

    #[test]
    fn display() {
        let (f, l) = lam14();
        let x = &(&l.pow(4).unwrap() * &FieldElement::from_int(&f, 7)) - &FieldElement::from_int(&f, 12);
        assert_eq!(x.to_string(), "7*l^4 - 12");
        assert_eq!(l.scale(&BigRational::new((-1).into(), 2.into())).to_string(), "-1/2*l");
    }

    #[test]
    fn decimals() {
        let (f, l) = lam14();
        assert_eq!(l.approx_decimal(12).unwrap(), "1.949855824364");
        assert_eq!((-&l).approx_decimal(3).unwrap(), "-1.950");
        let third = FieldElement::from_rational(&f, &BigRational::new((-1).into(), 3.into()));
        assert_eq!(third.approx_decimal(4).unwrap(), "-0.3333");
        let z = FieldElement::generator(&make_cyclotomic_field(6).unwrap());
        assert_eq!(z.approx_decimal(5).unwrap(), "0.50000 + 0.86603*i");
        assert_eq!(z.pow(5).unwrap().approx_decimal(2).unwrap(), "0.50 - 0.87*i");
    }
}
