//! Gap bounds for the unit-pattern search.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::One;

use crate::circle::{circle_min_estimate, circle_min_lower_bound};
use crate::polyring::{eval_interval, Enclosure, IntPoly, Rational};
use crate::unitcircle::{classify, count_inside_radius, count_unit_circle, Label, SturmChain};
use crate::Result;

const SQRT_BITS: u32 = 64;
const BISECTION_DEPTH: u32 = 60;
const EVAL_PREC: u32 = 96;
/// Rouché radii are drawn from `1 + j / RADIUS_STEPS`.
const RADIUS_STEPS: i64 = 256;
const RADIUS_MAX_STEP: i64 = 768;
const CIRCLE_DEPTH: u32 = 18;

/// `ceil(sqrt(x))` to `SQRT_BITS` fractional bits, an upper bound for `sqrt(x)`.
fn sqrt_upper(x: &Rational) -> Rational {
    let scale = BigInt::one() << (2 * SQRT_BITS);
    let scaled = (x * Rational::from_integer(scale)).ceil().to_integer();
    let mut r = scaled.sqrt();
    if &r * &r < scaled {
        r += 1;
    }
    Rational::new(r, BigInt::one() << SQRT_BITS)
}

/// Upper bound for every Salem number of length `len`: from
/// `tau^2 + tau^-2 <= len^2 - 4 len + 6`, rounded up to 6 decimals.
pub fn goncalves_upper_bound(len: usize) -> Rational {
    let l = len as i64;
    let s = Rational::from_integer(BigInt::from(l * l - 4 * l + 6));
    let disc = sqrt_upper(&(&s * &s - Rational::from_integer(4.into())));
    let tau_sq = (s + disc) / Rational::from_integer(2.into());
    let tau = sqrt_upper(&tau_sq);
    let million = BigInt::from(1_000_000);
    Rational::new(
        (tau * Rational::from_integer(million.clone())).ceil().to_integer(),
        million,
    )
}

/// A certified lower bound for `|q|` on `[a, b]`, or `None` if `q` has a
/// zero there.
pub fn interval_min_abs(q: &IntPoly, a: &Rational, b: &Rational) -> Option<Rational> {
    if SturmChain::new(q).count_closed(a, b) > 0 {
        return None;
    }
    let mut best: Option<Rational> = None;
    let mut stack = vec![(Enclosure::new(a.clone(), b.clone()).ok()?, 0u32)];
    while let Some((x, depth)) = stack.pop() {
        let v = eval_interval(q, &x, EVAL_PREC);
        let low = match v.sign() {
            Some(Ordering::Greater) => v.lo().clone(),
            Some(Ordering::Less) => -v.hi().clone(),
            _ if depth < BISECTION_DEPTH => {
                let (l, r) = x.bisect();
                stack.push((l, depth + 1));
                stack.push((r, depth + 1));
                continue;
            }
            _ => return None,
        };
        if best.as_ref().is_none_or(|m| &low < m) {
            best = Some(low);
        }
    }
    best
}

/// Largest `g >= 0` with `base^g m <= rest`, or `None` if `m > rest`.
pub fn max_gap(base: &Rational, m: &Rational, rest: usize) -> Option<u64> {
    let rest = Rational::from_integer(BigInt::from(rest));
    if *m > rest {
        return None;
    }
    let mut g = 0;
    let mut value = m.clone();
    loop {
        value *= base;
        if value > rest {
            return Some(g);
        }
        g += 1;
    }
}

/// The outcome of bounding the next gap after prefix `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GapBound {
    /// Every admissible gap is at most this value.
    Finite(u64),
    /// No gap is admissible.
    Empty,
    /// Bounded by a Rouché circle of the given radius.
    Rouche { bound: u64, radius: Rational },
    /// `Q` has one zero outside the circle and it lies in `[a, b]`.
    SingleZero(Label),
    /// `Q` has several zeros outside the circle and no certified circle was found.
    RoucheFailed,
}

/// Bound the gap following a prefix `q` that carries `used` of the `len` units.
pub fn gap_bound(q: &IntPoly, used: usize, len: usize, a: &Rational, b: &Rational) -> Result<GapBound> {
    let rest = len - used;
    if let Some(m) = interval_min_abs(q, a, b) {
        return Ok(max_gap(a, &m, rest).map_or(GapBound::Empty, GapBound::Finite));
    }
    let outside = count_unit_circle(q)?.outside;
    if outside <= 1 {
        return Ok(GapBound::SingleZero(classify(q)?.label));
    }
    Ok(rouche_bound(q, rest).unwrap_or(GapBound::RoucheFailed))
}

/// Pick `rho > 1` with at least two zeros of `q` outside `|z| = rho` and
/// a certified `m <= |q|` on that circle; then every gap `g` with
/// `rho^g m > rest` leaves at least two zeros outside the unit circle.
fn rouche_bound(q: &IntPoly, rest: usize) -> Option<GapBound> {
    let radius = |j: i64| Rational::new(BigInt::from(RADIUS_STEPS + j), BigInt::from(RADIUS_STEPS));
    let two_outside = |j: i64| count_inside_radius(q, &radius(j)).is_some_and(|k| q.deg() >= k + 2);
    // zeros outside |z| = rho only decrease as rho grows
    if !two_outside(1) {
        return None;
    }
    let (mut lo, mut hi) = (1, RADIUS_MAX_STEP + 1);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if two_outside(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let coeffs = q.to_f64s();
    let samples = 512 + 64 * q.deg();
    let mut ranked: Vec<(f64, i64)> = (1..=lo)
        .filter_map(|j| {
            let rho = 1.0 + j as f64 / RADIUS_STEPS as f64;
            let m = circle_min_estimate(&coeffs, rho, samples);
            (m > 0.0).then(|| ((rest as f64 / m).ln().max(0.0) / rho.ln(), j))
        })
        .collect();
    ranked.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
    for &(_, j) in ranked.iter().take(12) {
        if !two_outside(j) {
            continue;
        }
        let rho = radius(j);
        let Some(m) = circle_min_lower_bound(q, &rho, CIRCLE_DEPTH) else {
            continue;
        };
        let bound = max_gap(&rho, &m, rest).unwrap_or(0);
        return Some(GapBound::Rouche { bound, radius: rho });
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_rational;
    use num_traits::Signed;

    fn r(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn goncalves_examples() {
        let b5 = goncalves_upper_bound(5);
        assert_eq!(b5, r("3.302776"));
        let b6 = goncalves_upper_bound(6);
        assert_eq!(b6, r("4.236068"));
        // tau^2 + tau^-2 at the bound is at least 11
        let t2 = &b5 * &b5;
        assert!(&t2 + t2.recip() >= r("11"));
    }

    #[test]
    fn first_gap() {
        assert_eq!(max_gap(&r("1.17"), &Rational::one(), 5), Some(10));
        assert_eq!(max_gap(&r("2"), &r("5"), 4), None);
        assert_eq!(max_gap(&r("2"), &r("1"), 1), Some(0));
    }

    #[test]
    fn bounded_prefixes() {
        let q: IntPoly = "z^10-1".parse().unwrap();
        let m = interval_min_abs(&q, &r("1.17"), &r("4.24")).unwrap();
        assert!(m.is_positive() && m <= r("3.807"));
        let fam: IntPoly = "z^3-z-1".parse().unwrap();
        assert!(interval_min_abs(&fam, &r("1.17"), &r("4.24")).is_none());
        assert_eq!(
            gap_bound(&fam, 3, 6, &r("1.17"), &r("4.24")).unwrap(),
            GapBound::SingleZero(Label::Pisot)
        );
    }

    #[test]
    fn rouche_example() {
        // zeros +-sqrt(3): one in the interval, two outside the circle
        let q: IntPoly = "z^2-3".parse().unwrap();
        match gap_bound(&q, 3, 6, &r("1.17"), &r("3.2")).unwrap() {
            GapBound::Rouche { bound, radius } => {
                assert!(radius > Rational::one());
                assert!(count_inside_radius(&q, &radius) == Some(0));
                assert!(bound < 20);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
