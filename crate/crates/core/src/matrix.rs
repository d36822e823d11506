//! Exact 2×2 matrices over a number field and their Möbius action.

use std::fmt;
use std::sync::Arc;

use crate::exactfield::{FieldElement, FieldError, NumberField, Result};

/// A point of the projective line over a field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Point {
    Finite(FieldElement),
    Infinity,
}

impl Point {
    pub fn finite(&self) -> Option<&FieldElement> {
        match self {
            Point::Finite(x) => Some(x),
            Point::Infinity => None,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Finite(x) => write!(f, "{x}"),
            Point::Infinity => f.write_str("inf"),
        }
    }
}

/// `[[a, b], [c, d]]` with entries in one field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix2 {
    pub a: FieldElement,
    pub b: FieldElement,
    pub c: FieldElement,
    pub d: FieldElement,
}

impl Matrix2 {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement, d: FieldElement) -> Result<Self> {
        a.check_same(&b)?;
        a.check_same(&c)?;
        a.check_same(&d)?;
        Ok(Matrix2 { a, b, c, d })
    }

    pub fn identity(field: &Arc<NumberField>) -> Self {
        Self::from_i64(field, [[1, 0], [0, 1]])
    }

    pub fn from_i64(field: &Arc<NumberField>, m: [[i64; 2]; 2]) -> Self {
        let e = |v| FieldElement::from_int(field, v);
        Matrix2 { a: e(m[0][0]), b: e(m[0][1]), c: e(m[1][0]), d: e(m[1][1]) }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        self.a.field()
    }

    pub fn entries(&self) -> [&FieldElement; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn det(&self) -> FieldElement {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn trace(&self) -> FieldElement {
        &self.a + &self.d
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        self.a.check_same(&o.a)?;
        Ok(self.mul(o))
    }

    pub fn mul(&self, o: &Self) -> Self {
        Matrix2 {
            a: &(&self.a * &o.a) + &(&self.b * &o.c),
            b: &(&self.a * &o.b) + &(&self.b * &o.d),
            c: &(&self.c * &o.a) + &(&self.d * &o.c),
            d: &(&self.c * &o.b) + &(&self.d * &o.d),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x)
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        self.map(|x| x * s)
    }

    pub fn map(&self, f: impl Fn(&FieldElement) -> FieldElement) -> Self {
        Matrix2 { a: f(&self.a), b: f(&self.b), c: f(&self.c), d: f(&self.d) }
    }

    pub fn try_map(&self, f: impl Fn(&FieldElement) -> Result<FieldElement>) -> Result<Self> {
        Ok(Matrix2 { a: f(&self.a)?, b: f(&self.b)?, c: f(&self.c)?, d: f(&self.d)? })
    }

    pub fn inverse(&self) -> Result<Self> {
        let det = self.det();
        if det.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let inv = det.inv()?;
        Ok(Matrix2 { a: &self.d * &inv, b: -&(&self.b * &inv), c: -&(&self.c * &inv), d: &self.a * &inv })
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::identity(self.field());
        let mut e = e.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.d.is_one() && self.b.is_zero() && self.c.is_zero()
    }

    /// Equality in PGL: `self = ±other`.
    pub fn proj_eq(&self, other: &Self) -> bool {
        self == other || *self == other.neg()
    }

    /// Möbius action `x ↦ (ax + b)/(cx + d)` on the projective line.
    pub fn apply(&self, p: &Point) -> Result<Point> {
        match p {
            Point::Infinity => {
                if self.c.is_zero() {
                    Ok(Point::Infinity)
                } else {
                    Ok(Point::Finite(self.a.checked_div(&self.c)?))
                }
            }
            Point::Finite(x) => {
                self.a.check_same(x)?;
                let den = &(&self.c * x) + &self.d;
                let num = &(&self.a * x) + &self.b;
                if den.is_zero() {
                    Ok(Point::Infinity)
                } else {
                    Ok(Point::Finite(num.checked_div(&den)?))
                }
            }
        }
    }

    /// Linear action on a column vector.
    pub fn apply_vector(&self, x: &FieldElement, y: &FieldElement) -> (FieldElement, FieldElement) {
        (&(&self.a * x) + &(&self.b * y), &(&self.c * x) + &(&self.d * y))
    }

    pub fn render(&self, var: &str) -> String {
        format!(
            "[[{}, {}], [{}, {}]]",
            self.a.render(var),
            self.b.render(var),
            self.c.render(var),
            self.d.render(var)
        )
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(self.a.default_var()))
    }
}

impl fmt::Debug for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix2({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::make_real_cos_field;

    #[test]
    fn mobius_basics() {
        let f = make_real_cos_field(14).unwrap();
        let l = FieldElement::generator(&f);
        let one = FieldElement::one(&f);
        let zero = FieldElement::zero(&f);
        let s = Matrix2::new(one.clone(), l.clone(), zero.clone(), one.clone()).unwrap();
        let t = Matrix2::from_i64(&f, [[0, -1], [1, 0]]);
        assert_eq!(t.apply(&Point::Infinity).unwrap(), Point::Finite(zero.clone()));
        assert_eq!(t.apply(&Point::Finite(zero)).unwrap(), Point::Infinity);
        let x = FieldElement::from_int(&f, 3);
        assert_eq!(s.apply(&Point::Finite(x.clone())).unwrap(), Point::Finite(&x + &l));
        assert!(t.mul(&t).proj_eq(&Matrix2::identity(&f)));
        assert!(s.mul(&s.inverse().unwrap()).is_identity());
        assert_eq!(s.pow(-3).unwrap().b, l.scale_int(-3));
    }
}
