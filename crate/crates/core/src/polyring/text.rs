//! Human form `z^12-z^7-z^6-z^5+1` and machine form `["1","0",...]`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::IntPoly;
use crate::error::Error;

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            let mag = c.abs();
            if k == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("z")?,
                _ => write!(f, "z^{k}")?,
            }
        }
        Ok(())
    }
}

impl IntPoly {
    /// JSON array of decimal strings in ascending degree order.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.coeff_strings()).expect("strings serialize")
    }

    pub fn from_json(s: &str) -> Result<IntPoly, Error> {
        let raw: Vec<serde_json::Value> =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let coeffs = raw
            .iter()
            .map(|v| match v {
                serde_json::Value::String(s) => parse_int(s),
                serde_json::Value::Number(n) => parse_int(&n.to_string()),
                other => Err(Error::Parse(format!("bad coefficient {other}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IntPoly::new(coeffs))
    }

    fn coeff_strings(&self) -> Vec<String> {
        self.coeffs().iter().map(|c| c.to_string()).collect()
    }
}

fn parse_int(s: &str) -> Result<BigInt, Error> {
    s.trim()
        .parse::<BigInt>()
        .map_err(|_| Error::Parse(format!("bad integer {s:?}")))
}

impl FromStr for IntPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<IntPoly, Error> {
        let s = s.trim();
        if s.starts_with('[') {
            return IntPoly::from_json(s);
        }
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let bytes = text.as_bytes();
        let mut terms: Vec<(usize, BigInt)> = Vec::new();
        let mut i = 0;
        let bad = |i: usize| Error::Parse(format!("unexpected input at offset {i} in {text:?}"));
        while i < bytes.len() {
            let mut negative = false;
            if bytes[i] == b'+' || bytes[i] == b'-' {
                negative = bytes[i] == b'-';
                i += 1;
            } else if !terms.is_empty() {
                return Err(bad(i));
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let mut coeff = if i > start {
                text[start..i].parse::<BigInt>().map_err(|_| bad(start))?
            } else {
                BigInt::one()
            };
            let has_digits = i > start;
            if i < bytes.len() && bytes[i] == b'*' {
                if !has_digits {
                    return Err(bad(i));
                }
                i += 1;
            }
            let mut exp = 0usize;
            if i < bytes.len() && (bytes[i] == b'z' || bytes[i] == b'x') {
                i += 1;
                exp = 1;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    let es = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if es == i {
                        return Err(bad(es));
                    }
                    exp = text[es..i].parse().map_err(|_| bad(es))?;
                }
            } else if !has_digits {
                return Err(bad(i));
            }
            if negative {
                coeff = -coeff;
            }
            terms.push((exp, coeff));
        }
        let top = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let mut coeffs = vec![BigInt::zero(); top + 1];
        for (e, c) in terms {
            coeffs[e] += c;
        }
        Ok(IntPoly::new(coeffs))
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coeff_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<IntPoly, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        let coeffs = raw
            .iter()
            .map(|s| parse_int(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        Ok(IntPoly::new(coeffs))
    }
}
