use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::{vars, Poly};
use super::scalar::Rational;
use super::PolyError;

/// Wire form `{vars, terms: [{exp, num, den}]}`. Integers are decimal strings
/// on output; plain JSON integers are accepted on input.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub num: BigIntText,
    pub den: BigIntText,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BigIntText(pub BigInt);

impl Serialize for BigIntText {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for BigIntText {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Int(n) => Ok(BigIntText(BigInt::from(n))),
            Repr::Text(s) => s.trim().parse().map(BigIntText).map_err(serde::de::Error::custom),
        }
    }
}

impl Poly<Rational> {
    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            vars: self.vars().iter().cloned().collect(),
            terms: self
                .terms()
                .rev()
                .map(|(m, c)| TermJson {
                    exp: m.0.clone(),
                    num: BigIntText(c.numer().clone()),
                    den: BigIntText(c.denom().clone()),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<Self, PolyError> {
        let ring = vars(&j.vars);
        let mut p = Poly::zero(&ring);
        for t in &j.terms {
            if t.exp.len() != ring.len() {
                return Err(PolyError::Arity {
                    left: ring.len(),
                    right: t.exp.len(),
                });
            }
            let c = Rational::from_parts(t.num.0.clone(), t.den.0.clone())
                .ok_or_else(|| PolyError::Domain("zero denominator".into()))?;
            p.add_term(super::poly::Monomial(t.exp.clone()), c);
        }
        Ok(p)
    }
}

impl Serialize for Poly<Rational> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly<Rational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = PolyJson::deserialize(d)?;
        Poly::from_json(&j).map_err(serde::de::Error::custom)
    }
}
