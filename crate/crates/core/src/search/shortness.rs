//! Shortness: the least length of a Salem polynomial for a given Salem number.

use num_traits::One;
use serde::Serialize;

use super::{enumerate, representatives, SearchConfig};
use crate::error::{domain, Result};
use crate::polyring::{Enclosure, IntPoly, Rational};
use crate::unitcircle::{classify, root_above_one, Label};

/// Digits of the enclosure used as the search interval.
const INTERVAL_DIGITS: u32 = 20;
/// No Salem number has shortness below this.
pub const MIN_SHORTNESS: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShortnessResult {
    /// `None` when no short polynomial exists up to `max_length`.
    pub shortness: Option<usize>,
    pub max_length: usize,
    /// Short polynomials sorted by degree.
    pub polys: Vec<IntPoly>,
    /// False if some search on the way was incomplete.
    pub exhaustive: bool,
}

/// Salem polynomials of length `len` whose Salem number is `tau` (the root
/// of `m`), with `S / m` cyclotomic; and whether the search was complete.
pub fn short_polynomials(m: &IntPoly, tau: &Enclosure, len: usize) -> Result<(Vec<IntPoly>, bool)> {
    let mut lo = tau.lo().clone();
    if lo <= Rational::one() {
        lo = (Rational::one() + tau.hi()) / Rational::from_integer(2.into());
    }
    let cfg = SearchConfig::new(len, lo, tau.hi().clone())?;
    let report = enumerate(&cfg)?;
    Ok((representatives(&report, m)?, report.exhaustive))
}

/// Search lengths `5..=max_length` for the least length of a Salem
/// polynomial of the Salem number of `m`. Polynomials of degree above
/// `degree_cap` are ignored.
pub fn shortness(m: &IntPoly, max_length: usize, degree_cap: Option<usize>) -> Result<ShortnessResult> {
    let cert = classify(m)?;
    if cert.label != Label::Salem {
        return domain(format!("{m} is not a Salem polynomial ({})", cert.label));
    }
    let tau = root_above_one(m, INTERVAL_DIGITS)?;
    let mut exhaustive = true;
    for len in MIN_SHORTNESS..=max_length {
        let (mut polys, complete) = short_polynomials(m, &tau, len)?;
        exhaustive &= complete;
        if let Some(cap) = degree_cap {
            polys.retain(|p| p.deg() <= cap);
        }
        if !polys.is_empty() {
            return Ok(ShortnessResult {
                shortness: Some(len),
                max_length,
                polys,
                exhaustive,
            });
        }
    }
    Ok(ShortnessResult {
        shortness: None,
        max_length,
        polys: Vec::new(),
        exhaustive,
    })
}
