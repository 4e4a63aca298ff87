//! Exact rational arithmetic helpers. Every density, ratio and bound in this
//! crate is a `BigRational`; floating point appears only in the optional
//! 6-decimal renderings of surd-valued table columns.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat_int(v: impl Into<BigInt>) -> Rat {
    Rat::from_integer(v.into())
}

pub fn rat_u128(v: u128) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// `num / den` as a reduced rational. Panics on a zero denominator.
pub fn rat(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rat {
    Rat::new(num.into(), den.into())
}

/// Renders a rational canonically: `p` when the denominator is one,
/// `p/q` otherwise.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `p/q`, or an exact decimal such as `-1.25`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::InvalidParameter("empty rational".into()));
    }
    let bad = |_| Error::InvalidParameter(format!("cannot parse rational `{s}`"));
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(bad)?;
        let den: BigInt = den.trim().parse().map_err(bad)?;
        if den.is_zero() {
            return Err(Error::InvalidParameter(format!(
                "zero denominator in `{s}`"
            )));
        }
        return Ok(Rat::new(num, den));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::InvalidParameter(format!(
                "cannot parse decimal `{s}`"
            )));
        }
        let negative = int_part.starts_with('-');
        let int_abs = int_part.trim_start_matches(['-', '+']);
        let int_val: BigInt = if int_abs.is_empty() {
            BigInt::zero()
        } else {
            int_abs.parse().map_err(bad)?
        };
        let frac_val: BigInt = frac_part.parse().map_err(bad)?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let mut value = Rat::new(int_val * &scale + frac_val, scale);
        if negative {
            value = -value;
        }
        return Ok(value);
    }
    let v: BigInt = s.parse().map_err(bad)?;
    Ok(Rat::from_integer(v))
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Renders `q * sqrt(surd)` with six decimal digits.
pub fn surd_decimal(q: &Rat, surd: u32) -> String {
    format!("{:.6}", rat_to_f64(q) * (surd as f64).sqrt())
}

pub fn is_nonnegative(r: &Rat) -> bool {
    !r.is_negative()
}

/// Serde adapter: rationals as canonical `p/q` strings.
pub mod serde_rat {
    use super::{parse_rat, rat_to_string, Rat};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rat("3").unwrap(), rat_int(3));
        assert_eq!(parse_rat("-3").unwrap(), rat_int(-3));
        assert_eq!(parse_rat("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rat("1.25").unwrap(), rat(5, 4));
        assert_eq!(parse_rat("-0.5").unwrap(), rat(-1, 2));
        assert_eq!(parse_rat("-.5").unwrap(), rat(-1, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("abc").is_err());
        assert!(parse_rat("1.2e3").is_err());
    }

    #[test]
    fn canonical_strings() {
        assert_eq!(rat_to_string(&rat(6, 4)), "3/2");
        assert_eq!(rat_to_string(&rat(4, 2)), "2");
        assert_eq!(rat_to_string(&rat(-1, 2)), "-1/2");
        assert_eq!(rat_to_string(&rat(1, -2)), "-1/2");
    }
}
