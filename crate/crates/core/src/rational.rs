//! Exact rationals: parsing `p/q`, and JSON as `{"num": p, "den": q}`.

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

/// Parses `p/q` or an integer `p`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidArgument(format!("not a rational p/q: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (
            p.trim().parse::<i64>().map_err(|_| bad())?,
            q.trim().parse::<i64>().map_err(|_| bad())?,
        ),
        None => (s.parse::<i64>().map_err(|_| bad())?, 1),
    };
    if den == 0 {
        return Err(Error::InvalidArgument(format!("zero denominator in {s:?}")));
    }
    Ok(Ratio::new(num, den))
}

pub fn format_rational(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Serialize, Deserialize)]
struct Parts {
    num: i64,
    den: i64,
}

pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    Parts {
        num: *r.numer(),
        den: *r.denom(),
    }
    .serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
    let p = Parts::deserialize(d)?;
    if p.den == 0 {
        return Err(serde::de::Error::custom("zero denominator"));
    }
    Ok(Ratio::new(p.num, p.den))
}

/// For `Option<Rational>` fields.
pub mod option {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
        r.map(|r| Parts {
            num: *r.numer(),
            den: *r.denom(),
        })
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Rational>, D::Error> {
        match Option::<Parts>::deserialize(d)? {
            Some(p) if p.den == 0 => Err(serde::de::Error::custom("zero denominator")),
            Some(p) => Ok(Some(Ratio::new(p.num, p.den))),
            None => Ok(None),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("1/50").unwrap(), Ratio::new(1, 50));
        assert_eq!(parse_rational(" 46/20 ").unwrap(), Ratio::new(23, 10));
        assert_eq!(parse_rational("3").unwrap(), Ratio::from_integer(3));
        assert_eq!(parse_rational("-2/4").unwrap(), Ratio::new(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&Ratio::new(23, 10)), "23/10");
    }
}
