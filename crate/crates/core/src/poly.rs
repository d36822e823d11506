//! Dense univariate polynomials over ℤ and ℚ.
//!
//! Coefficients are stored low degree first with no trailing zeros, so the
//! zero polynomial is the empty vector.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith;

/// Integer polynomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `x^n - 1`
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut c = vec![BigInt::zero(); n + 1];
        c[0] = -BigInt::one();
        c[n] = BigInt::one();
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has no degree.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// True iff only even powers of `x` occur.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Zero::is_zero)
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Quotient and remainder by a monic divisor.
    pub fn divrem_monic(&self, divisor: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(divisor.is_monic(), "divrem_monic: divisor must be monic");
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (IntPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let lead = std::mem::take(&mut rem[k]);
            if lead.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs[..dd].iter().enumerate() {
                rem[k - dd + j] -= &lead * d;
            }
            quot[k - dd] = lead;
        }
        rem.truncate(dd);
        (IntPoly::new(quot), IntPoly::new(rem))
    }

    pub fn rem_monic(&self, divisor: &IntPoly) -> IntPoly {
        self.divrem_monic(divisor).1
    }

    /// Exact division by a monic polynomial; panics if the remainder is nonzero.
    pub fn exact_div_monic(&self, divisor: &IntPoly) -> IntPoly {
        let (q, r) = self.divrem_monic(divisor);
        assert!(r.is_zero(), "exact_div_monic: nonzero remainder");
        q
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from(c.clone()))
    }

    /// Sign of `self(num / 2^shift)`, evaluated exactly in integers.
    pub fn sign_at_dyadic(&self, num: &BigInt, shift: u32) -> i32 {
        // 2^{shift d} f(num/2^shift) = Σ a_k num^k 2^{shift (d - k)}, by Horner
        let Some(d) = self.degree() else { return 0 };
        let mut acc = BigInt::zero();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            acc = acc * num + (c << (shift as usize * (d - k)));
        }
        sign_of(&acc)
    }

    /// Substitute `x -> other` (polynomial composition).
    pub fn compose(&self, other: &IntPoly) -> IntPoly {
        self.coeffs
            .iter()
            .rev()
            .fold(IntPoly::zero(), |acc, c| acc.mul(other).add(&IntPoly::new(vec![c.clone()])))
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| BigRational::from(c.clone())).collect())
    }
}

pub(crate) fn sign_of(x: &BigInt) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn fmt_terms<T, F>(f: &mut fmt::Formatter<'_>, coeffs: &[T], var: &str, render: F) -> fmt::Result
where
    F: Fn(&T) -> Option<(bool, String, bool)>,
{
    // render returns (negative, |c| string, |c| == 1)
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        let Some((neg, mag, unit)) = render(c) else { continue };
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        match i {
            0 => write!(f, "{mag}")?,
            1 if unit => write!(f, "{var}")?,
            1 => write!(f, "{mag}*{var}")?,
            _ if unit => write!(f, "{var}^{i}")?,
            _ => write!(f, "{mag}*{var}^{i}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, &self.coeffs, "x", |c| {
            (!c.is_zero()).then(|| (c.is_negative(), c.abs().to_string(), c.abs().is_one()))
        })
    }
}

/// Rational polynomial; used for inversion modulo a field modulus.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        RatPoly::new(vec![BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }

    pub fn divrem(&self, divisor: &RatPoly) -> (RatPoly, RatPoly) {
        let dd = divisor.degree().expect("divrem: division by zero polynomial");
        if self.coeffs.len() <= dd {
            return (RatPoly::zero(), self.clone());
        }
        let lead_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let factor = std::mem::take(&mut rem[k]) * &lead_inv;
            if factor.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs[..dd].iter().enumerate() {
                rem[k - dd + j] -= &factor * d;
            }
            quot[k - dd] = factor;
        }
        rem.truncate(dd);
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    /// Inverse of `self` modulo `modulus`, if `gcd(self, modulus) = 1`.
    pub fn inverse_mod(&self, modulus: &RatPoly) -> Option<RatPoly> {
        // Extended Euclid tracking only the coefficient of `self`.
        let (mut r0, mut r1) = (modulus.clone(), self.divrem(modulus).1);
        let (mut s0, mut s1) = (RatPoly::zero(), RatPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r0 is the gcd; invertible iff it is a nonzero constant
        if r0.degree() != Some(0) {
            return None;
        }
        let c = r0.coeffs[0].recip();
        Some(RatPoly::new(s0.divrem(modulus).1.coeffs.into_iter().map(|x| x * &c).collect()))
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, &self.coeffs, "x", |c| {
            (!c.is_zero()).then(|| (c.is_negative(), c.abs().to_string(), c.abs().is_one()))
        })
    }
}

/// The n-th cyclotomic polynomial, via the Möbius product
/// `Φ_n = ∏_{d | n} (x^d - 1)^{μ(n/d)}`.
pub fn cyclotomic_polynomial(n: u64) -> IntPoly {
    assert!(n >= 1, "cyclotomic_polynomial: n must be positive");
    let mut num = IntPoly::one();
    let mut den = IntPoly::one();
    for d in arith::divisors(n) {
        match arith::mobius(n / d) {
            1 => num = num.mul(&IntPoly::x_pow_minus_one(d as usize)),
            -1 => den = den.mul(&IntPoly::x_pow_minus_one(d as usize)),
            _ => {}
        }
    }
    // den is ±monic; normalize sign so the division is by a monic divisor.
    if den.leading().is_some_and(|c| c.is_negative()) {
        den = den.scale(&BigInt::from(-1));
        num = num.scale(&BigInt::from(-1));
    }
    num.exact_div_monic(&den)
}

/// The Vieta–Lucas polynomials `V_k` with `V_k(x + 1/x) = x^k + x^{-k}`.
pub fn lucas_v_polys(up_to: usize) -> Vec<IntPoly> {
    let mut v = vec![IntPoly::from_i64(&[2]), IntPoly::x()];
    while v.len() <= up_to {
        let k = v.len();
        let next = IntPoly::x().mul(&v[k - 1]).sub(&v[k - 2]);
        v.push(next);
    }
    v.truncate(up_to + 1);
    v
}

/// Minimal polynomial `Ψ_n` of `2 cos(2π/n)` for `n >= 3`, from the identity
/// `x^{φ(n)/2} Ψ_n(x + 1/x) = Φ_n(x)`.
pub fn real_cos_minpoly(n: u64) -> IntPoly {
    assert!(n >= 3, "real_cos_minpoly: n must be at least 3");
    let phi = cyclotomic_polynomial(n);
    let two_m = phi.degree().unwrap();
    let m = two_m / 2;
    let v = lucas_v_polys(m);
    // Φ(x)/x^m = c_m + Σ_{k≥1} c_{m+k} (x^k + x^{-k})
    let mut out = IntPoly::new(vec![phi.coeff(m)]);
    for (k, vk) in v.iter().enumerate().skip(1) {
        out = out.add(&vk.scale(&phi.coeff(m + k)));
    }
    out
}

/// Chebyshev polynomial of the second kind by the three-term recurrence.
pub fn chebyshev_u(n: usize) -> IntPoly {
    let two_x = IntPoly::from_i64(&[0, 2]);
    let (mut prev, mut cur) = (IntPoly::one(), two_x.clone());
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = two_x.mul(&cur).sub(&prev);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Rational gcd-normalized content helper: lcm of denominators.
pub(crate) fn common_denominator<'a, I: IntoIterator<Item = &'a BigRational>>(it: I) -> BigInt {
    it.into_iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}
