use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use super::{HeckeError, Result};
use crate::exactfield::{make_real_cos_field, FieldElement, NumberField};
use crate::matrix::Matrix2;

/// `ℚ(λ_q)`, realized as `ℚ(2cos(2π/2q))`.
pub fn lambda_field(q: u64) -> Result<Arc<NumberField>> {
    if q < 3 {
        return Err(HeckeError::InvalidQ(q));
    }
    Ok(make_real_cos_field(2 * q)?)
}

/// `λ_q = 2cos(π/q)`.
pub fn lambda(q: u64) -> Result<FieldElement> {
    Ok(FieldElement::generator(&lambda_field(q)?))
}

/// A determinant-one matrix over `ℚ(λ_q)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupMatrix {
    q: u64,
    m: Matrix2,
}

impl GroupMatrix {
    pub fn new(q: u64, m: Matrix2) -> Result<Self> {
        let f = lambda_field(q)?;
        if m.field().kind() != f.kind() {
            return Err(crate::exactfield::FieldError::FieldMismatch(m.field().to_string(), f.to_string()).into());
        }
        if !m.det().is_one() {
            return Err(HeckeError::NotUnimodular);
        }
        Ok(GroupMatrix { q, m })
    }

    pub fn identity(q: u64) -> Result<Self> {
        Ok(GroupMatrix { q, m: Matrix2::identity(&lambda_field(q)?) })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn matrix(&self) -> &Matrix2 {
        &self.m
    }

    pub fn into_matrix(self) -> Matrix2 {
        self.m
    }

    pub fn mul(&self, o: &GroupMatrix) -> GroupMatrix {
        assert_eq!(self.q, o.q, "GroupMatrix::mul across different q");
        let m = self.m.mul(&o.m);
        debug_assert!(m.det().is_one());
        GroupMatrix { q: self.q, m }
    }

    pub fn neg(&self) -> GroupMatrix {
        GroupMatrix { q: self.q, m: self.m.neg() }
    }

    /// The inverse `[[d, -b], [-c, a]]`.
    pub fn inverse(&self) -> GroupMatrix {
        let m = &self.m;
        GroupMatrix { q: self.q, m: Matrix2 { a: m.d.clone(), b: -&m.b, c: -&m.c, d: m.a.clone() } }
    }

    pub fn pow(&self, e: i64) -> GroupMatrix {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = GroupMatrix { q: self.q, m: Matrix2::identity(self.m.field()) };
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }
}

impl Deref for GroupMatrix {
    type Target = Matrix2;
    fn deref(&self) -> &Matrix2 {
        &self.m
    }
}

impl fmt::Display for GroupMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.m.render("l"))
    }
}

impl fmt::Debug for GroupMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupMatrix(q={}, {})", self.q, self.m.render("l"))
    }
}

/// `(S, T)` for `G_q`.
pub fn generators(q: u64) -> Result<(GroupMatrix, GroupMatrix)> {
    let f = lambda_field(q)?;
    let l = FieldElement::generator(&f);
    let one = FieldElement::one(&f);
    let zero = FieldElement::zero(&f);
    let s = Matrix2 { a: one.clone(), b: l, c: zero, d: one };
    let t = Matrix2::from_i64(&f, [[0, -1], [1, 0]]);
    Ok((GroupMatrix { q, m: s }, GroupMatrix { q, m: t }))
}

/// `S^k` directly: `[[1, kλ], [0, 1]]`.
pub(crate) fn s_power(q: u64, k: i64) -> Result<GroupMatrix> {
    let f = lambda_field(q)?;
    let one = FieldElement::one(&f);
    let m = Matrix2 { a: one.clone(), b: FieldElement::generator(&f).scale_int(k), c: FieldElement::zero(&f), d: one };
    Ok(GroupMatrix { q, m })
}
