//! JSON forms of multivectors and command results.
//!
//! A multivector is `{"p": 1, "q": 2, "coeffs": {"1": "3", "e12": "-1/2"}}`:
//! keys are canonical blade names in canonical order, values are rationals as
//! strings. Zero coefficients are omitted on output and accepted on input.

use std::fmt;

use cliffinv::{Blade, LengthDeltaMap, Multivector, Rational, Signature};
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error("invalid JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error(transparent)]
    Signature(#[from] cliffinv::Error),
    #[error("coefficient key {key:?}: {reason}")]
    Key { key: String, reason: String },
    #[error("coefficient of {key}: {value:?} is not a rational")]
    Value { key: String, value: String },
}

/// Coefficient list in document order; duplicates are summed on conversion.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Coeffs(pub Vec<(String, String)>);

impl Serialize for Coeffs {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for Coeffs {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct CoeffsVisitor;

        impl<'de> Visitor<'de> for CoeffsVisitor {
            type Value = Coeffs;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object mapping blade names to rational strings")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Coeffs, A::Error> {
                let mut out = Vec::new();
                while let Some((k, v)) = access.next_entry::<String, RationalText>()? {
                    out.push((k, v.0));
                }
                Ok(Coeffs(out))
            }
        }

        d.deserialize_map(CoeffsVisitor)
    }
}

/// A rational given either as a string or as a JSON integer.
struct RationalText(String);

impl<'de> Deserialize<'de> for RationalText {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::String(s) => Ok(RationalText(s)),
            serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => Ok(RationalText(n.to_string())),
            other => Err(de::Error::custom(format!("expected a rational string, found {other}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultivectorJson {
    pub p: usize,
    pub q: usize,
    pub coeffs: Coeffs,
}

impl From<&Multivector> for MultivectorJson {
    fn from(m: &Multivector) -> Self {
        let sig = m.sig();
        MultivectorJson {
            p: sig.p(),
            q: sig.q(),
            coeffs: Coeffs(m.terms().map(|(b, c)| (b.to_string(), c.to_string())).collect()),
        }
    }
}

impl TryFrom<&MultivectorJson> for Multivector {
    type Error = JsonError;

    fn try_from(j: &MultivectorJson) -> Result<Self, JsonError> {
        let sig = Signature::new(j.p, j.q)?;
        let mut terms = Vec::with_capacity(j.coeffs.0.len());
        for (key, value) in &j.coeffs.0 {
            let blade = Blade::parse_for(key, sig.n()).map_err(|(_, e)| JsonError::Key {
                key: key.clone(),
                reason: e.to_string(),
            })?;
            let coeff: Rational = value.trim().parse().map_err(|_| JsonError::Value {
                key: key.clone(),
                value: value.clone(),
            })?;
            terms.push((blade, coeff));
        }
        Ok(Multivector::from_terms(sig, terms)?)
    }
}

pub fn multivector_from_str(text: &str) -> Result<Multivector, JsonError> {
    let j: MultivectorJson = serde_json::from_str(text)?;
    Multivector::try_from(&j)
}

/// `[1,-1,...]`, one entry per grade `0..=n`.
pub fn delta_to_json(f: LengthDeltaMap) -> serde_json::Value {
    serde_json::Value::from(f.table())
}
