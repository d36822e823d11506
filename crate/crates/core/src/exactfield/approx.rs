use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A closed interval `[lo / 2^prec, hi / 2^prec]`.
///
/// All operations round outward, so the true value stays enclosed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicInterval {
    lo: BigInt,
    hi: BigInt,
    prec: u32,
}

fn floor_shift(x: &BigInt, prec: u32) -> BigInt {
    x.div_floor(&(BigInt::one() << prec))
}

fn ceil_shift(x: &BigInt, prec: u32) -> BigInt {
    -floor_shift(&-x, prec)
}

impl DyadicInterval {
    pub fn new(lo: BigInt, hi: BigInt, prec: u32) -> Self {
        debug_assert!(lo <= hi);
        DyadicInterval { lo, hi, prec }
    }

    pub fn exact_int(n: &BigInt, prec: u32) -> Self {
        let v = n << prec;
        DyadicInterval { lo: v.clone(), hi: v, prec }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Scaled endpoints `(lo, hi)`.
    pub fn bounds_scaled(&self) -> (&BigInt, &BigInt) {
        (&self.lo, &self.hi)
    }

    pub fn width_ulps(&self) -> BigInt {
        &self.hi - &self.lo
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.prec, other.prec);
        DyadicInterval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi, prec: self.prec }
    }

    pub fn add_int(&self, n: &BigInt) -> Self {
        let v = n << self.prec;
        DyadicInterval { lo: &self.lo + &v, hi: &self.hi + &v, prec: self.prec }
    }

    pub fn neg(&self) -> Self {
        DyadicInterval { lo: -&self.hi, hi: -&self.lo, prec: self.prec }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.prec, other.prec);
        let p = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let min = p.iter().min().unwrap();
        let max = p.iter().max().unwrap();
        DyadicInterval { lo: floor_shift(min, self.prec), hi: ceil_shift(max, self.prec), prec: self.prec }
    }

    /// Divide by a positive integer.
    pub fn div_int(&self, n: &BigInt) -> Self {
        assert!(n.is_positive());
        DyadicInterval { lo: self.lo.div_floor(n), hi: -((-&self.hi).div_floor(n)), prec: self.prec }
    }

    /// Sign if decided by the enclosure.
    pub fn sign(&self) -> Option<i32> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    /// `⌊x⌋` if the enclosure decides it.
    pub fn floor(&self) -> Option<BigInt> {
        let a = floor_shift(&self.lo, self.prec);
        let b = floor_shift(&self.hi, self.prec);
        (a == b).then_some(a)
    }

    /// Square root of a nonnegative enclosure (lower end clamped at 0).
    pub fn sqrt(&self) -> Self {
        let lo = if self.lo.is_positive() { (&self.lo << self.prec).sqrt() } else { BigInt::zero() };
        let hi_sq = &self.hi << self.prec;
        let mut hi = if hi_sq.is_positive() { hi_sq.sqrt() } else { BigInt::zero() };
        if &hi * &hi < hi_sq {
            hi += 1;
        }
        DyadicInterval { lo, hi, prec: self.prec }
    }

    pub fn midpoint_scaled(&self) -> BigInt {
        (&self.lo + &self.hi) >> 1
    }

    pub fn midpoint_f64(&self) -> f64 {
        let m = self.midpoint_scaled();
        // keep 60 significant bits before converting
        let bits = m.bits() as i64;
        let drop = (bits - 60).max(0) as u32;
        let top = (&m >> drop).to_f64().unwrap_or(f64::NAN);
        top * 2f64.powi(drop as i32 - self.prec as i32)
    }

    /// Does the enclosure contain `num / 2^prec2` (compared exactly)?
    pub fn contains_dyadic(&self, num: &BigInt, prec2: u32) -> bool {
        // compare lo/2^p <= num/2^p2 <= hi/2^p
        let (a, b) = if self.prec >= prec2 {
            (num << (self.prec - prec2), None)
        } else {
            (num.clone(), Some(prec2 - self.prec))
        };
        match b {
            None => self.lo <= a && a <= self.hi,
            Some(s) => (&self.lo << s) <= a && a <= (&self.hi << s),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: i64, hi: i64, p: u32) -> DyadicInterval {
        DyadicInterval::new(BigInt::from(lo), BigInt::from(hi), p)
    }

    #[test]
    fn mul_encloses_products() {
        // [-1.5, 0.5] * [0.25, 2.0] at prec 2
        let a = iv(-6, 2, 2);
        let b = iv(1, 8, 2);
        let c = a.mul(&b);
        assert_eq!(c.bounds_scaled(), (&BigInt::from(-12), &BigInt::from(4)));
        assert_eq!(c.sign(), None);
    }

    #[test]
    fn floor_and_sign() {
        let a = iv(9, 11, 2); // [2.25, 2.75]
        assert_eq!(a.floor(), Some(BigInt::from(2)));
        assert_eq!(a.sign(), Some(1));
        let b = iv(-3, -1, 2);
        assert_eq!(b.floor(), Some(BigInt::from(-1)));
        let c = iv(7, 9, 2);
        assert_eq!(c.floor(), None);
    }

    #[test]
    fn sqrt_encloses() {
        let two = iv(2 << 20, 2 << 20, 20);
        let r = two.sqrt();
        let (lo, hi) = r.bounds_scaled();
        let s = std::f64::consts::SQRT_2 * (1u64 << 20) as f64;
        assert!(lo.to_f64().unwrap() <= s && s <= hi.to_f64().unwrap());
    }
}
