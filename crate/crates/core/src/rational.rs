//! Exact non-negative rationals for diary constants.

use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serializer};

pub type Rational = Ratio<u64>;

/// Parses `"3"`, `"3/4"` or `"0.75"`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let den: u64 = den.trim().parse().ok()?;
        if den == 0 {
            return None;
        }
        return Some(Ratio::new(num.trim().parse().ok()?, den));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        if frac.is_empty() || frac.len() > 18 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let whole: u64 = if whole.is_empty() { 0 } else { whole.parse().ok()? };
        let scale = 10u64.pow(frac.len() as u32);
        let frac: u64 = frac.parse().ok()?;
        return Some(Ratio::new(whole.checked_mul(scale)?.checked_add(frac)?, scale));
    }
    text.parse().ok().map(Ratio::from_integer)
}

pub fn format_rational(value: &Rational) -> String {
    if value.is_integer() || value.numer().is_zero() {
        value.to_integer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn serialize<S: Serializer>(value: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
    serializer.serialize_str(&format_rational(value))
}

pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Rational, D::Error> {
    let text = String::deserialize(deserializer)?;
    parse_rational(&text).ok_or_else(|| serde::de::Error::custom(format!("bad rational {text:?}")))
}

pub mod option {
    use super::*;

    pub fn serialize<S: Serializer>(value: &Option<Rational>, serializer: S) -> Result<S::Ok, S::Error> {
        match value {
            Some(v) => serializer.serialize_some(&format_rational(v)),
            None => serializer.serialize_none(),
        }
    }
}
