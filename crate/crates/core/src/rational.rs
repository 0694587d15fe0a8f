//! Exact rational helpers shared by the cone, polytope and decoder modules.
//!
//! Rationals serialize as `"p/q"` strings (or `"p"` when the denominator is
//! one), which is the canonical form produced by `Ratio`'s `Display`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn vector(values: &[i64]) -> Vec<Rational> {
    values.iter().map(|&v| int(v)).collect()
}

pub fn parse(text: &str) -> Result<Rational> {
    text.trim()
        .parse::<Rational>()
        .map_err(|_| Error::Parse(format!("not a rational: {text:?}")))
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, _)| !x.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Scales a nonzero vector to the unique primitive integer vector with the
/// same direction (positive multiples only). The zero vector maps to itself.
pub fn primitive(values: &[Rational]) -> Vec<BigInt> {
    let lcm = values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let scaled: Vec<BigInt> = values
        .iter()
        .map(|v| v.numer() * (&lcm / v.denom()))
        .collect();
    let gcd = scaled
        .iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if gcd.is_zero() {
        return scaled;
    }
    scaled.into_iter().map(|v| v / &gcd).collect()
}

pub fn primitive_rational(values: &[Rational]) -> Vec<Rational> {
    primitive(values)
        .into_iter()
        .map(Rational::from_integer)
        .collect()
}

pub fn is_integral(values: &[Rational]) -> bool {
    values.iter().all(|v| v.is_integer())
}

pub fn is_nonnegative(values: &[Rational]) -> bool {
    values.iter().all(|v| !v.is_negative())
}

/// Best rational approximation of `x` with denominator at most `max_denom`,
/// from the continued-fraction convergents and semiconvergents.
pub fn rationalize(x: f64, max_denom: u64) -> Result<Rational> {
    if !x.is_finite() {
        return Err(Error::Numerical(format!("cannot rationalize {x}")));
    }
    let negative = x < 0.0;
    let target = x.abs();
    // convergents h/k
    let (mut h0, mut h1): (u128, u128) = (0, 1);
    let (mut k0, mut k1): (u128, u128) = (1, 0);
    let mut rest = target;
    let max = max_denom as u128;
    loop {
        let a = rest.floor();
        if a > 1e30 {
            break;
        }
        let a = a as u128;
        let k2 = a * k1 + k0;
        if k2 > max {
            // largest semiconvergent that still fits
            let m = (max - k0) / k1;
            let (hs, ks) = (m * h1 + h0, m * k1 + k0);
            let candidate = hs as f64 / ks as f64;
            let current = h1 as f64 / k1 as f64;
            if m > 0 && (candidate - target).abs() < (current - target).abs() {
                h1 = hs;
                k1 = ks;
            }
            break;
        }
        let h2 = a * h1 + h0;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        let frac = rest - rest.floor();
        if frac < 1e-15 {
            break;
        }
        rest = 1.0 / frac;
    }
    let value = Rational::new(BigInt::from(h1), BigInt::from(k1));
    Ok(if negative { -value } else { value })
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Decimal rendering with 12 significant digits, used by the lossy CSV export.
pub fn to_decimal(value: &Rational) -> String {
    let f = to_f64(value);
    if f == 0.0 {
        return "0".to_string();
    }
    let formatted = format!("{:.11e}", f);
    let parsed: f64 = formatted.parse().unwrap_or(f);
    format!("{parsed}")
}

/// Rank of a rational matrix given by rows (Gaussian elimination).
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for r in (rank + 1)..m.len() {
            if m[r][c].is_zero() {
                continue;
            }
            let factor = &m[r][c] / &pivot;
            for k in c..cols {
                let delta = &factor * &m[rank][k];
                m[r][k] -= delta;
            }
        }
        rank += 1;
    }
    rank
}

pub mod serde_vec {
    use super::*;

    pub fn serialize<S: Serializer>(values: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = values.iter().map(|v| v.to_string()).collect();
        strings.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        strings
            .iter()
            .map(|t| parse(t).map_err(de::Error::custom))
            .collect()
    }
}

pub mod serde_matrix {
    use super::*;

    pub fn serialize<S: Serializer>(rows: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<Vec<String>> = rows
            .iter()
            .map(|r| r.iter().map(|v| v.to_string()).collect())
            .collect();
        strings.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
        let strings = Vec::<Vec<String>>::deserialize(d)?;
        strings
            .iter()
            .map(|row| {
                row.iter()
                    .map(|t| parse(t).map_err(de::Error::custom))
                    .collect()
            })
            .collect()
    }
}

pub mod serde_scalar {
    use super::*;

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse(&text).map_err(de::Error::custom)
    }
}
