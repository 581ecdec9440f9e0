//! Exact rational intervals and conservative polynomial evaluation.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::IntPoly;
use crate::error::{domain, Error, Result};

pub type Rational = BigRational;

/// A closed interval `[lo, hi]` with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Enclosure {
    lo: Rational,
    hi: Rational,
}

impl Enclosure {
    pub fn new(lo: Rational, hi: Rational) -> Result<Enclosure> {
        if lo > hi {
            return domain(format!("empty enclosure [{lo}, {hi}]"));
        }
        Ok(Enclosure { lo, hi })
    }

    pub fn point(x: Rational) -> Enclosure {
        Enclosure {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / BigInt::from(2)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_enclosure(&self, other: &Enclosure) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// True when every point of `self` is strictly below every point of `other`.
    pub fn strictly_below(&self, other: &Enclosure) -> bool {
        self.hi < other.lo
    }

    pub fn is_disjoint_from(&self, other: &Enclosure) -> bool {
        self.strictly_below(other) || other.strictly_below(self)
    }

    /// Sign of every element, if it is the same throughout.
    pub fn sign(&self) -> Option<std::cmp::Ordering> {
        use std::cmp::Ordering::*;
        if self.lo.is_positive() {
            Some(Greater)
        } else if self.hi.is_negative() {
            Some(Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Equal)
        } else {
            None
        }
    }

    pub fn add(&self, other: &Enclosure) -> Enclosure {
        Enclosure {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn neg(&self) -> Enclosure {
        Enclosure {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    pub fn mul(&self, other: &Enclosure) -> Enclosure {
        let p = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = p.iter().min().unwrap().clone();
        let hi = p.iter().max().unwrap().clone();
        Enclosure { lo, hi }
    }

    pub fn scale(&self, k: &Rational) -> Enclosure {
        let a = &self.lo * k;
        let b = &self.hi * k;
        if a <= b {
            Enclosure { lo: a, hi: b }
        } else {
            Enclosure { lo: b, hi: a }
        }
    }

    /// Widen outward so both endpoints are multiples of `2^-prec`.
    pub fn round_outward(&self, prec: u32) -> Enclosure {
        Enclosure {
            lo: round_outward(&self.lo, prec, false),
            hi: round_outward(&self.hi, prec, true),
        }
    }

    /// Split at the midpoint.
    pub fn bisect(&self) -> (Enclosure, Enclosure) {
        let m = self.midpoint();
        (
            Enclosure {
                lo: self.lo.clone(),
                hi: m.clone(),
            },
            Enclosure {
                lo: m,
                hi: self.hi.clone(),
            },
        )
    }

    /// The common `digits`-decimal rounding (to nearest, ties up) of both
    /// endpoints, if they agree.
    pub fn round_decimal(&self, digits: u32) -> Option<String> {
        let a = round_to_nearest_scaled(&self.lo, digits);
        let b = round_to_nearest_scaled(&self.hi, digits);
        (a == b).then(|| format_scaled(&a, digits))
    }

    /// Endpoints written with `digits` decimals, the lower rounded down and
    /// the upper rounded up.
    pub fn decimal_bounds(&self, digits: u32) -> (String, String) {
        let scale = Rational::from_integer(BigInt::from(10).pow(digits));
        let lo = (&self.lo * &scale).floor().to_integer();
        let hi = (&self.hi * &scale).ceil().to_integer();
        (format_scaled(&lo, digits), format_scaled(&hi, digits))
    }

    /// Rough value for heuristics and sorting ties; never used in certificates.
    pub fn approx(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.decimal_bounds(12);
        write!(f, "[{lo}, {hi}]")
    }
}

fn round_to_nearest_scaled(x: &Rational, digits: u32) -> BigInt {
    let scale = Rational::from_integer(BigInt::from(10).pow(digits));
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    (x * scale + half).floor().to_integer()
}

fn format_scaled(n: &BigInt, digits: u32) -> String {
    let neg = n.is_negative();
    let s = n.abs().to_string();
    let d = digits as usize;
    let padded = if s.len() <= d {
        format!("{}{}", "0".repeat(d + 1 - s.len()), s)
    } else {
        s
    };
    let (int, frac) = padded.split_at(padded.len() - d);
    let sign = if neg { "-" } else { "" };
    if d == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

/// Round to a multiple of `2^-prec`, upward if `up` and downward otherwise.
pub fn round_outward(x: &Rational, prec: u32, up: bool) -> Rational {
    let den = BigInt::one() << prec;
    if x.denom() <= &den {
        return x.clone();
    }
    let scaled = x * Rational::from_integer(den.clone());
    let n = if up { scaled.ceil() } else { scaled.floor() };
    Rational::new(n.to_integer(), den)
}

/// Conservative enclosure of `{p(t) : t in x}` by interval Horner evaluation,
/// rounding outward to multiples of `2^-prec` after each step.
pub fn eval_interval(p: &IntPoly, x: &Enclosure, prec: u32) -> Enclosure {
    if x.lo == x.hi {
        return Enclosure::point(p.eval(&x.lo));
    }
    let mut acc = Enclosure::point(Rational::zero());
    for c in p.coeffs().iter().rev() {
        let c = Enclosure::point(Rational::from_integer(c.clone()));
        acc = acc.mul(x).add(&c).round_outward(prec);
    }
    acc
}

/// Parse `3/2`, `1.17`, `-4` or `1.5e-3` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let mut value = Rational::new(digits, BigInt::from(10).pow(frac.len() as u32));
    let tenpow = Rational::from_integer(BigInt::from(10).pow(exp.unsigned_abs()));
    if exp >= 0 {
        value *= tenpow;
    } else {
        value /= tenpow;
    }
    Ok(if neg { -value } else { value })
}
