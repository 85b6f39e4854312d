//! Exact rational coordinates and their textual form (`"p/q"` or `"n"`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn mid(a: &Q, b: &Q) -> Q {
    (a + b) / q(2)
}

pub fn parse(text: &str) -> Result<Q> {
    let s = text.trim();
    let bad = || Error::Parse(format!("malformed rational {text:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            Ok(Q::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Q::from_integer(n))
        }
    }
}

pub fn format(value: &Q) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn ceil_to_i64(value: &Q) -> i64 {
    let c = value.ceil();
    c.numer().to_string().parse().expect("ceiling fits in i64")
}

pub fn floor_to_i64(value: &Q) -> i64 {
    let f = value.floor();
    f.numer().to_string().parse().expect("floor fits in i64")
}

/// Serde adapter storing a rational as its string form.
pub mod serde_q {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        let text = String::deserialize(d)?;
        parse(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse("3/6").unwrap(), frac(1, 2));
        assert_eq!(parse("-7").unwrap(), q(-7));
        assert_eq!(parse(" 13/2 ").unwrap(), frac(13, 2));
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(parse("1/0"), Err(Error::Parse(_))));
        assert!(matches!(parse("a/b"), Err(Error::Parse(_))));
        assert!(matches!(parse(""), Err(Error::Parse(_))));
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(format(&frac(4, 8)), "1/2");
        assert_eq!(format(&q(5)), "5");
        assert_eq!(format(&frac(-3, 9)), "-1/3");
    }

    #[test]
    fn rounding() {
        assert_eq!(ceil_to_i64(&frac(83 * 13, 104)), 11);
        assert_eq!(floor_to_i64(&frac(13, 4)), 3);
    }
}
