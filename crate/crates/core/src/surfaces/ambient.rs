use std::sync::Arc;

use super::Result;
use crate::exactfield::{make_cyclotomic_field, FieldElement, NumberField};

/// `ℚ(ζ_{4q})` with the trigonometric constants used by the surfaces:
/// `e^{iπk/q} = ζ^{2k}` and `i = ζ^q`.
#[derive(Clone, Debug)]
pub struct Ambient {
    pub q: u64,
    pub field: Arc<NumberField>,
    zeta: FieldElement,
    i: FieldElement,
}

impl Ambient {
    pub fn new(q: u64) -> Result<Self> {
        let field = make_cyclotomic_field(4 * q)?;
        let zeta = FieldElement::generator(&field);
        let i = zeta.pow(q as i64)?;
        Ok(Ambient { q, field, zeta, i })
    }

    /// `ζ_{4q}^k`
    pub fn zeta_pow(&self, k: i64) -> FieldElement {
        let n = 4 * self.q as i64;
        self.zeta.pow(k.rem_euclid(n)).expect("nonnegative power")
    }

    /// `e^{iπk/q}`
    pub fn exp_pi(&self, k: i64) -> FieldElement {
        self.zeta_pow(2 * k)
    }

    pub fn i(&self) -> &FieldElement {
        &self.i
    }

    pub fn int(&self, n: i64) -> FieldElement {
        FieldElement::from_int(&self.field, n)
    }

    /// `cos(kπ/q)`
    pub fn cos_pi(&self, k: i64) -> FieldElement {
        let e = self.exp_pi(k);
        (&e + &self.exp_pi(-k)).div_integer(&2.into())
    }

    /// `sin(kπ/q)`
    pub fn sin_pi(&self, k: i64) -> FieldElement {
        let d = &self.exp_pi(k) - &self.exp_pi(-k);
        // 1/(2i) = -i/2
        (&d * &self.i).div_integer(&(-2).into())
    }

    /// `x + iy`
    pub fn complex(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        x + &(&self.i * y)
    }

    /// `2cos(2π/q) = ζ^4 + ζ^{-4}`, generating the trace field.
    pub fn trace_field_generator(&self) -> FieldElement {
        &self.zeta_pow(4) + &self.zeta_pow(-4)
    }

    /// `[ℚ(cos 2π/q) : ℚ]`
    pub fn trace_field_degree(&self) -> usize {
        (crate::arith::totient(self.q) as usize / 2).max(1)
    }
}
