//! Exact rational numbers and their decimal rendering.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `"13/3"`, or `"5"` for integers.
pub fn to_exact(r: &Rational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_exact(s: &str) -> Result<Rational> {
    let bad = || Error::Format(format!("not a rational: {s:?}"));
    let (numer, denom) = match s.split_once('/') {
        Some((a, b)) => (a.trim().parse::<BigInt>().map_err(|_| bad())?, b.trim().parse::<BigInt>().map_err(|_| bad())?),
        None => (s.trim().parse::<BigInt>().map_err(|_| bad())?, BigInt::from(1)),
    };
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(numer, denom))
}

/// Decimal string with `places` digits after the point, rounding half to
/// even.
pub fn to_decimal(r: &Rational, places: u32) -> String {
    let scale = BigInt::from(10).pow(places);
    let scaled = r.abs() * Rational::from_integer(scale.clone());
    let (quot, rem): (BigInt, BigInt) = scaled.numer().div_rem(scaled.denom());
    let twice = &rem + &rem;
    let round_up = match twice.cmp(scaled.denom()) {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Equal => quot.is_odd(),
    };
    let digits = if round_up { quot + 1 } else { quot };
    let (int_part, frac_part) = digits.div_rem(&scale);
    let sign = if r.numer().sign() == Sign::Minus && !digits_is_zero(&int_part, &frac_part) { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{:0>width$}", frac_part.to_string(), width = places as usize)
    }
}

fn digits_is_zero(a: &BigInt, b: &BigInt) -> bool {
    a.is_zero() && b.is_zero()
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Serde adapter storing a rational as `{"exact": "13/3", "decimal": 4.333333}`.
pub mod serde_exact {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::*;

    #[derive(Serialize, Deserialize)]
    struct Wire {
        exact: String,
        decimal: f64,
    }

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        let decimal = to_decimal(r, 6).parse::<f64>().expect("decimal rendering parses");
        Wire { exact: to_exact(r), decimal }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let wire = Wire::deserialize(d)?;
        parse_exact(&wire.exact).map_err(serde::de::Error::custom)
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
            match r {
                Some(r) => s.serialize_some(&Wire {
                    exact: to_exact(r),
                    decimal: to_decimal(r, 6).parse::<f64>().expect("decimal rendering parses"),
                }),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Rational>, D::Error> {
            Option::<Wire>::deserialize(d)?
                .map(|w| parse_exact(&w.exact).map_err(serde::de::Error::custom))
                .transpose()
        }
    }
}
