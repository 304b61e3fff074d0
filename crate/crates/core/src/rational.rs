//! Exact rationals and their text form.
//!
//! Rationals serialize as strings `"p/q"` (or `"p"` when `q = 1`) so that
//! arbitrarily large values survive a JSON round trip.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: impl Into<BigInt>) -> Rational {
    Rational::from_integer(v.into())
}

/// `10^-e` exactly.
pub fn ten_pow_neg(e: u32) -> Rational {
    Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), e as usize))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Smallest rational with denominator `2^40` that is `>= x`. Finite `x` only.
pub fn upper_dyadic(x: f64) -> Rational {
    let scale = (1u64 << 40) as f64;
    let num = (x * scale).ceil();
    Rational::new(BigInt::from(num as i128), BigInt::from(1u64 << 40))
}

pub fn format(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim().parse::<BigInt>().ok()?, b.trim().parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// `serde(with = ...)` helper storing a [`Rational`] as a string.
pub mod as_string {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    use super::Rational;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}")))
    }
}

/// Same as [`as_string`] for maps of rationals.
pub mod map_as_string {
    use std::collections::BTreeMap;

    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    use super::Rational;

    pub fn serialize<S: Serializer>(m: &BTreeMap<String, Rational>, s: S) -> Result<S::Ok, S::Error> {
        let out: BTreeMap<&str, String> = m.iter().map(|(k, v)| (k.as_str(), super::format(v))).collect();
        out.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<String, Rational>, D::Error> {
        let raw = BTreeMap::<String, String>::deserialize(d)?;
        raw.into_iter()
            .map(|(k, v)| {
                super::parse(&v)
                    .map(|r| (k, r))
                    .ok_or_else(|| D::Error::custom(format!("bad rational {v:?}")))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        for r in [rat(21, 5), rat(-3, 1), rat(0, 7), ten_pow_neg(26)] {
            assert_eq!(parse(&format(&r)), Some(r));
        }
        assert_eq!(format(&rat(42, 10)), "21/5");
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("x"), None);
    }

    #[test]
    fn dyadic_is_above() {
        for x in [0.0, 1.5, -2.25, 3.141592653589793, 1e-9] {
            assert!(upper_dyadic(x) >= Rational::from_float(x).unwrap());
        }
    }
}
