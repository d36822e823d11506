use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::element::FieldElement;
use super::field::{FieldKind, NumberField};
use super::{FieldError, Result};

/// `{"kind": "realcos"|"cyclotomic", "n": int}`
pub type FieldJson = FieldKind;

/// Wire form of a [`FieldElement`]: the field plus one `["num","den"]`
/// pair of decimal strings per power-basis coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub field: FieldJson,
    pub coeffs: Vec<[String; 2]>,
}

impl From<&FieldElement> for ElementJson {
    fn from(x: &FieldElement) -> Self {
        ElementJson {
            field: x.field().kind(),
            coeffs: x.coeffs().iter().map(|c| [c.numer().to_string(), c.denom().to_string()]).collect(),
        }
    }
}

fn parse_int(s: &str) -> Result<BigInt> {
    s.trim().parse().map_err(|_| FieldError::InvalidField(format!("bad integer {s:?}")))
}

impl TryFrom<&ElementJson> for FieldElement {
    type Error = FieldError;

    fn try_from(j: &ElementJson) -> Result<Self> {
        let field = NumberField::from_kind(j.field)?;
        let coeffs = j
            .coeffs
            .iter()
            .map(|[n, d]| {
                let d = parse_int(d)?;
                if num_traits::Zero::is_zero(&d) {
                    return Err(FieldError::DivisionByZero);
                }
                Ok(BigRational::new(parse_int(n)?, d))
            })
            .collect::<Result<Vec<_>>>()?;
        FieldElement::from_coeffs(&field, &coeffs)
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = ElementJson::deserialize(d)?;
        FieldElement::try_from(&j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{make_cyclotomic_field, make_real_cos_field};

    #[test]
    fn wire_format() {
        let f = make_real_cos_field(7).unwrap();
        let x = FieldElement::from_coeffs(
            &f,
            &[BigRational::new(1.into(), 2.into()), BigRational::from_integer((-3).into()), BigRational::from_integer(0.into())],
        )
        .unwrap();
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"field":{"kind":"realcos","n":7},"coeffs":[["1","2"],["-3","1"],["0","1"]]}"#);
        let back: FieldElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn cyclotomic_roundtrip_and_errors() {
        let f = make_cyclotomic_field(12).unwrap();
        let z = FieldElement::generator(&f).pow(5).unwrap();
        let back: FieldElement = serde_json::from_str(&serde_json::to_string(&z).unwrap()).unwrap();
        assert_eq!(back, z);
        let bad = r#"{"field":{"kind":"cyclotomic","n":12},"coeffs":[["1","1"]]}"#;
        assert!(serde_json::from_str::<FieldElement>(bad).is_err());
        let zero_den = r#"{"field":{"kind":"cyclotomic","n":4},"coeffs":[["1","0"],["0","1"]]}"#;
        assert!(serde_json::from_str::<FieldElement>(zero_den).is_err());
    }
}
