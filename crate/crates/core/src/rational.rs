//! Arbitrary-precision rational scalars and their string wire format.
//!
//! Rationals are serialized as `"p/q"` strings (or `"p"` for integers) so
//! that JSON round-trips are lossless; see [`serde_str`] and
//! [`serde_pair_vec`] for the field adapters.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar, always kept in lowest terms with positive
/// denominator by the underlying representation.
pub type Rational = num_rational::BigRational;

/// Shorthand constructor from machine integers. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `1 / 2^n` for `n <= 63`-ish levels; uses a shift so large levels stay cheap.
pub fn rat_pow2_recip(n: u32) -> Rational {
    Rational::new(BigInt::from(1), BigInt::from(1) << n)
}

/// Nearest `f64` to the exact value.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parse `"p/q"` or `"p"`. Rejects zero denominators and garbage.
pub fn parse(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim())
        .map_err(|e| Error::Invalid(format!("cannot parse rational {s:?}: {e}")))
}

/// True iff `0 <= r <= 1`.
pub fn in_unit_interval(r: &Rational) -> bool {
    !r.is_negative() && r <= &rat_int(1)
}

/// Reduce into `[0, 1)` modulo 1 (floor reduction, exact).
pub fn mod_one(r: &Rational) -> Rational {
    r - r.floor()
}

/// Exact-to-string form used everywhere a rational crosses a wire.
pub fn format(r: &Rational) -> String {
    if r.denom().is_zero() {
        unreachable!("rationals never hold zero denominators");
    }
    r.to_string()
}

/// Serde adapter: a single rational as a `"p/q"` string field.
pub mod serde_str {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::Rational;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let raw = String::deserialize(d)?;
        super::parse(&raw).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter: `Vec<(Rational, Rational)>` as pairs of strings.
pub mod serde_pair_vec {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::Rational;

    pub fn serialize<S: Serializer>(v: &[(Rational, Rational)], s: S) -> Result<S::Ok, S::Error> {
        let raw: Vec<(String, String)> = v
            .iter()
            .map(|(a, b)| (super::format(a), super::format(b)))
            .collect();
        raw.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<Vec<(Rational, Rational)>, D::Error> {
        let raw = Vec::<(String, String)>::deserialize(d)?;
        raw.into_iter()
            .map(|(a, b)| {
                Ok((
                    super::parse(&a).map_err(serde::de::Error::custom)?,
                    super::parse(&b).map_err(serde::de::Error::custom)?,
                ))
            })
            .collect()
    }
}
