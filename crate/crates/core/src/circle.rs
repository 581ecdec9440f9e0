//! Certified lower bounds for `|p(z)|` on a circle `|z| = rho`.
//!
//! Points of the right half circle are `rho (1 - t^2 + 2ti) / (1 + t^2)` for
//! rational `t` in `[-1, 1]`; the left half is handled through `p(-z)`.
//! Between two sample parameters the arc has length at most `2 rho dt`, so
//! every point of it is within `rho dt` of an endpoint, and `|p|` drops by at
//! most `L rho dt` where `L` bounds `|p'|` on the circle.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::polyring::{IntPoly, Rational};

/// Fractional bits kept when taking square roots of exact squared moduli.
const SQRT_BITS: u32 = 64;
const INITIAL_SEGMENTS: usize = 64;

#[derive(Clone, Debug)]
struct Gauss {
    re: BigInt,
    im: BigInt,
}

impl Gauss {
    fn mul(&self, o: &Gauss) -> Gauss {
        Gauss {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }
}

/// Lower bound for `|p(z(t))|` at the exact circle point of parameter `t`.
fn modulus_lower(p: &IntPoly, rho: &Rational, t: &Rational) -> Rational {
    let (a, b) = (rho.numer(), rho.denom());
    let (u, v) = (t.numer(), t.denom());
    let x = Gauss {
        re: a * (v * v - u * u),
        im: a * BigInt::from(2) * u * v,
    };
    let y = b * (v * v + u * u);
    let n = p.deg();
    let mut ypow = BigInt::one();
    let mut acc = Gauss {
        re: p.leading().cloned().unwrap_or_default(),
        im: BigInt::zero(),
    };
    for c in p.coeffs().iter().rev().skip(1) {
        ypow *= &y;
        acc = acc.mul(&x);
        acc.re += c * &ypow;
    }
    let num = acc.norm();
    let den = y.pow(2 * n as u32);
    let scaled = (num << (2 * SQRT_BITS)) / den;
    Rational::new(scaled.sqrt(), BigInt::one() << SQRT_BITS)
}

/// `sum j |c_j| rho^(j-1)`, a bound for `|p'|` on `|z| = rho`.
fn derivative_bound(p: &IntPoly, rho: &Rational) -> Rational {
    let mut total = Rational::zero();
    let mut power = Rational::one();
    for (j, c) in p.coeffs().iter().enumerate().skip(1) {
        total += Rational::from_integer(c.abs() * BigInt::from(j)) * &power;
        power *= rho;
    }
    total
}

/// A positive rational `m` with `|p(z)| >= m` on `|z| = rho`, or `None`
/// when the subdivision reaches `max_depth` first (for instance because
/// `p` vanishes on the circle).
pub fn circle_min_lower_bound(p: &IntPoly, rho: &Rational, max_depth: u32) -> Option<Rational> {
    if p.is_zero() || !rho.is_positive() {
        return None;
    }
    if p.deg() == 0 {
        return Some(Rational::from_integer(p.coeff(0).abs()));
    }
    let lip = derivative_bound(p, rho) * rho;
    let halves = [p.clone(), p.compose_znegz()];
    let mut sampled_min: Option<Rational> = None;
    let mut stack = Vec::new();
    for q in &halves {
        let ts: Vec<Rational> = (0..=INITIAL_SEGMENTS)
            .map(|i| Rational::new(BigInt::from(2 * i as i64 - INITIAL_SEGMENTS as i64), BigInt::from(INITIAL_SEGMENTS as i64)))
            .collect();
        let vals: Vec<Rational> = ts.iter().map(|t| modulus_lower(q, rho, t)).collect();
        for v in &vals {
            if sampled_min.as_ref().is_none_or(|m| v < m) {
                sampled_min = Some(v.clone());
            }
        }
        for i in 0..INITIAL_SEGMENTS {
            stack.push((q, ts[i].clone(), ts[i + 1].clone(), vals[i].clone(), vals[i + 1].clone(), 0u32));
        }
    }
    let two = BigInt::from(2);
    let mut best: Option<Rational> = None;
    while let Some((q, t0, t1, v0, v1, depth)) = stack.pop() {
        let target = sampled_min.clone().unwrap() / &two;
        if !target.is_positive() {
            return None;
        }
        let bound = v0.clone().min(v1.clone()) - &lip * (&t1 - &t0);
        if bound >= target {
            if best.as_ref().is_none_or(|b| &bound < b) {
                best = Some(bound);
            }
            continue;
        }
        if depth >= max_depth {
            return None;
        }
        let tm = (&t0 + &t1) / &two;
        let vm = modulus_lower(q, rho, &tm);
        if sampled_min.as_ref().is_some_and(|m| &vm < m) {
            sampled_min = Some(vm.clone());
        }
        stack.push((q, t0, tm.clone(), v0, vm.clone(), depth + 1));
        stack.push((q, tm, t1, vm, v1, depth + 1));
    }
    best
}

/// Floating-point estimate of `min |p|` on `|z| = rho` from `samples` points.
pub(crate) fn circle_min_estimate(coeffs: &[f64], rho: f64, samples: usize) -> f64 {
    let mut best = f64::INFINITY;
    for k in 0..samples {
        let th = std::f64::consts::TAU * k as f64 / samples as f64;
        let (zr, zi) = (rho * th.cos(), rho * th.sin());
        let (mut ar, mut ai) = (0.0f64, 0.0f64);
        for &c in coeffs.iter().rev() {
            let nr = ar * zr - ai * zi + c;
            let ni = ar * zi + ai * zr;
            ar = nr;
            ai = ni;
        }
        best = best.min(ar.hypot(ai));
    }
    best
}
