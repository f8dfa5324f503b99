//! Field adapters for `#[serde(with = ...)]`.
//!
//! Rationals are strings `"p"` or `"p/q"`. Integers are JSON numbers when
//! they fit in an `i64` and decimal strings otherwise. Quadratic scalars are
//! objects `{"a": "p/q", "b": "p/q", "d": k}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::matrix::RatMatrix;
use crate::scalar::{format_rational, parse_rational, QuadExt};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for IntRepr {
    fn from(v: &BigInt) -> Self {
        match v.to_i64() {
            Some(x) => IntRepr::Small(x),
            None => IntRepr::Big(v.to_string()),
        }
    }
}

impl IntRepr {
    fn into_bigint<E: serde::de::Error>(self) -> Result<BigInt, E> {
        match self {
            IntRepr::Small(x) => Ok(BigInt::from(x)),
            IntRepr::Big(s) => s.parse().map_err(|_| E::custom(format!("bad integer {s:?}"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct QuadRepr {
    a: String,
    b: String,
    d: IntRepr,
}

fn quad_to_repr(q: &QuadExt) -> QuadRepr {
    QuadRepr {
        a: format_rational(q.rational_part()),
        b: format_rational(q.radical_part()),
        d: IntRepr::from(q.radicand()),
    }
}

fn quad_from_repr<E: serde::de::Error>(r: QuadRepr) -> Result<QuadExt, E> {
    let a = parse_rational(&r.a).map_err(E::custom)?;
    let b = parse_rational(&r.b).map_err(E::custom)?;
    let d = r.d.into_bigint()?;
    QuadExt::new(a, b, d).map_err(E::custom)
}

pub mod rat {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

pub mod rat_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| parse_rational(s).map_err(D::Error::custom))
            .collect()
    }
}

/// A square rational matrix as a list of rows.
pub mod rat_matrix {
    use super::*;

    pub fn serialize<S: Serializer>(m: &RatMatrix, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = m
            .rows()
            .iter()
            .map(|r| r.iter().map(format_rational).collect())
            .collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<RatMatrix, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s).map_err(D::Error::custom)).collect())
            .collect::<Result<Vec<Vec<_>>, _>>()?;
        RatMatrix::from_rows(parsed).map_err(D::Error::custom)
    }
}

pub mod rat_matrices {
    use super::*;

    #[derive(Serialize, Deserialize)]
    #[serde(transparent)]
    struct Wrap(#[serde(with = "super::rat_matrix")] RatMatrix);

    pub fn serialize<S: Serializer>(v: &[RatMatrix], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|m| Wrap(m.clone())))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<RatMatrix>, D::Error> {
        Ok(Vec::<Wrap>::deserialize(d)?.into_iter().map(|w| w.0).collect())
    }
}

pub mod int_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(IntRepr::from))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<IntRepr>::deserialize(d)?
            .into_iter()
            .map(IntRepr::into_bigint)
            .collect()
    }
}

pub mod int_rows {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<IntRepr>> = v.iter().map(|r| r.iter().map(IntRepr::from).collect()).collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        Vec::<Vec<IntRepr>>::deserialize(d)?
            .into_iter()
            .map(|r| r.into_iter().map(IntRepr::into_bigint).collect())
            .collect()
    }
}

pub mod quad {
    use super::*;

    pub fn serialize<S: Serializer>(q: &QuadExt, s: S) -> Result<S::Ok, S::Error> {
        quad_to_repr(q).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<QuadExt, D::Error> {
        quad_from_repr(QuadRepr::deserialize(d)?)
    }
}

pub mod quad_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[QuadExt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(quad_to_repr))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<QuadExt>, D::Error> {
        Vec::<QuadRepr>::deserialize(d)?
            .into_iter()
            .map(quad_from_repr)
            .collect()
    }
}
