//! Exact rational scalars and their canonical text form.
//!
//! Every number in this crate is a [`BigRational`] kept in lowest terms with
//! a positive denominator. The text form is `p/q`, with `/q` omitted when the
//! denominator is one (`2`, `-1/720`).

use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use thiserror::Error;

/// Arbitrary-precision rational in lowest terms.
pub type ExactScalar = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid exact scalar {text:?}: expected `p` or `p/q` with q != 0")]
pub struct ScalarParseError {
    pub text: String,
}

pub fn int(value: i64) -> ExactScalar {
    BigRational::from_integer(BigInt::from(value))
}

/// `p/q` reduced to lowest terms. Panics when `q == 0`.
pub fn ratio(p: i64, q: i64) -> ExactScalar {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn parse_scalar(text: &str) -> Result<ExactScalar, ScalarParseError> {
    let err = || ScalarParseError {
        text: text.to_owned(),
    };
    let trimmed = text.trim();
    let (num, den) = match trimmed.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (trimmed, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| err())?;
    let den = BigInt::from_str(den).map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(BigRational::new(num, den))
}

pub fn format_scalar(value: &ExactScalar) -> String {
    value.to_string()
}

/// `base^exp` with `0^0 = 1`.
pub fn pow(base: &ExactScalar, exp: u32) -> ExactScalar {
    num::traits::pow(base.clone(), exp as usize)
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for t in 0..k {
        acc *= BigInt::from(n - t);
        acc /= BigInt::from(t + 1);
    }
    acc
}

/// Falling product `s (s-1) ... (s-len+1)`; zero as soon as a factor is zero.
pub fn falling_product(s: i64, len: u32) -> BigInt {
    let mut acc = BigInt::one();
    for p in 0..len as i64 {
        acc *= BigInt::from(s - p);
    }
    acc
}

/// Serde adapters writing scalars as `p/q` strings.
pub mod serde_text {
    use super::*;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &ExactScalar, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&format_scalar(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<ExactScalar, D::Error> {
        let text = String::deserialize(de)?;
        parse_scalar(&text).map_err(D::Error::custom)
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(values: &[ExactScalar], ser: S) -> Result<S::Ok, S::Error> {
            let mut seq = ser.serialize_seq(Some(values.len()))?;
            for v in values {
                seq.serialize_element(&format_scalar(v))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<ExactScalar>, D::Error> {
            let texts = Vec::<String>::deserialize(de)?;
            texts
                .iter()
                .map(|t| parse_scalar(t).map_err(D::Error::custom))
                .collect()
        }
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(
            value: &Option<ExactScalar>,
            ser: S,
        ) -> Result<S::Ok, S::Error> {
            match value {
                Some(v) => ser.serialize_some(&format_scalar(v)),
                None => ser.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            de: D,
        ) -> Result<Option<ExactScalar>, D::Error> {
            let text = Option::<String>::deserialize(de)?;
            text.map(|t| parse_scalar(&t).map_err(D::Error::custom))
                .transpose()
        }
    }
}
