//! Exact rational arithmetic: dense polynomials, root isolation, and the
//! fraction-string wire format.

pub mod poly;
pub mod roots;

pub use num_rational::BigRational;
pub use poly::RationalPoly;
pub use roots::{
    default_width, isolate_real_roots, rational_root_test, simplest_rational_between, RootEnclosure,
    SearchInterval, SturmChain,
};

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Formats as `p/q`, or `p` for integers.
pub fn to_fraction_string(x: &BigRational) -> String {
    x.to_string()
}

/// Parses `p/q`, `p`, or a plain decimal such as `-0.25` or `1e-12`
/// (decimals are read exactly in base ten).
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Ok(r) = BigRational::from_str(s) {
        return (!r.denom().is_zero()).then_some(r);
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Option<BigRational> {
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer = BigInt::from_str(&digits).ok()?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        r = -r;
    }
    Some(r)
}

/// `10^-k` as an exact rational.
pub fn ten_to_minus(k: usize) -> BigRational {
    BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(10), k))
}

/// Serde adapter storing a `BigRational` as its fraction string.
pub mod fraction_string {
    use super::*;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_fraction_string(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).ok_or_else(|| D::Error::custom(format!("not a fraction: {s:?}")))
    }
}

/// Serde adapter for a list of fraction strings.
pub mod fraction_vec {
    use super::*;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(xs.iter().map(to_fraction_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).ok_or_else(|| D::Error::custom(format!("not a fraction: {s:?}"))))
            .collect()
    }
}
