use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use super::iet::{translations, Iet};
use super::Result;
use crate::exactfield::{FieldElement, NumberField};

/// An element of `K ∧_ℚ K`, stored as the coefficients of `e_a ∧ e_b`,
/// `a < b`, in the power basis `e_j = g^j` of `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeValue {
    field: Arc<NumberField>,
    entries: BTreeMap<(usize, usize), BigRational>,
}

impl WedgeValue {
    pub fn zero(field: &Arc<NumberField>) -> Self {
        WedgeValue { field: field.clone(), entries: BTreeMap::new() }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Nonzero `(a, b, coefficient)` with `a < b`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigRational)> {
        self.entries.iter().map(|(&(a, b), c)| (a, b, c))
    }

    fn add_entry(&mut self, key: (usize, usize), c: BigRational) {
        let e = self.entries.entry(key).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.entries.remove(&key);
        }
    }

    pub fn add(&self, other: &WedgeValue) -> WedgeValue {
        assert_eq!(self.field.kind(), other.field.kind(), "wedge values over different fields");
        let mut out = self.clone();
        for (&k, c) in &other.entries {
            out.add_entry(k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> WedgeValue {
        WedgeValue { field: self.field.clone(), entries: self.entries.iter().map(|(&k, c)| (k, -c)).collect() }
    }

    pub fn scale(&self, r: &BigRational) -> WedgeValue {
        if r.is_zero() {
            return WedgeValue::zero(&self.field);
        }
        WedgeValue { field: self.field.clone(), entries: self.entries.iter().map(|(&k, c)| (k, c * r)).collect() }
    }

    /// `{"field", "is_zero", "entries": [[a, b, "p/q"], …]}`
    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field.kind(),
            "is_zero": self.is_zero(),
            "entries": self.entries().map(|(a, b, c)| json!([a, b, c.to_string()])).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for WedgeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.entries().map(|(a, b, c)| format!("({c}) e{a}^e{b}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `u ∧ v`, with `(a,b)` entry `u_a v_b - u_b v_a`.
pub fn wedge(u: &FieldElement, v: &FieldElement) -> Result<WedgeValue> {
    u.check_same(v)?;
    let (cu, cv) = (u.coeffs(), v.coeffs());
    let mut out = WedgeValue::zero(u.field());
    for a in 0..cu.len() {
        for b in a + 1..cu.len() {
            out.add_entry((a, b), &cu[a] * &cv[b] - &cu[b] * &cv[a]);
        }
    }
    Ok(out)
}

/// `Σ l_i ∧ t_i`
pub fn saf_invariant(t: &Iet) -> Result<WedgeValue> {
    let mut acc = WedgeValue::zero(t.field());
    for (l, tr) in t.lengths().iter().zip(translations(t)) {
        acc = acc.add(&wedge(l, &tr)?);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_lambda;

    #[test]
    fn antisymmetric() {
        let u = parse_lambda("1 + 2l", 7).unwrap();
        let v = parse_lambda("3 - l^2", 7).unwrap();
        assert!(wedge(&u, &u).unwrap().is_zero());
        assert_eq!(wedge(&u, &v).unwrap(), wedge(&v, &u).unwrap().neg());
    }

    #[test]
    fn rotation_saf() {
        let a = parse_lambda("l - 1", 7).unwrap();
        let one = FieldElement::one(a.field());
        let t = Iet::new(vec![&one - &a, a.clone()], vec![1, 0]).unwrap();
        let expected = wedge(&one, &a).unwrap().scale(&BigRational::from_integer(2.into()));
        assert_eq!(saf_invariant(&t).unwrap(), expected);
        assert!(!expected.is_zero());
    }
}
