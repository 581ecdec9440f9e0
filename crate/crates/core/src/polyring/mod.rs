//! Dense integer polynomials in one variable.
//!
//! Coefficients are stored in ascending order, so `coeffs()[i]` is the
//! coefficient of `z^i`. The zero polynomial has no coefficients.

mod interval;
mod resultant;
mod text;

pub use interval::{eval_interval, parse_rational, round_outward, Enclosure, Rational};
pub use resultant::{resultant, BiPoly};

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * z^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `z^k`.
    pub fn z_pow(k: usize) -> Self {
        Self::monomial(BigInt::one(), k)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `z^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Coefficient reversal `z^d p(1/z)`.
    pub fn reciprocal(&self) -> Result<Self> {
        if self.is_zero() {
            return domain("reciprocal of the zero polynomial");
        }
        let mut c = self.coeffs.clone();
        c.reverse();
        Ok(Self::new(c))
    }

    fn reversed_unchecked(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    pub fn is_reciprocal(&self) -> bool {
        !self.is_zero() && self.reversed_unchecked() == *self
    }

    pub fn is_antireciprocal(&self) -> bool {
        !self.is_zero() && self.reversed_unchecked() == -self
    }

    /// Sum of absolute values of the coefficients.
    pub fn length(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// `p(-z)`.
    pub fn compose_znegz(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `p(z^2)`.
    pub fn compose_zsq(&self) -> Self {
        self.compose_zpow(2)
    }

    /// `p(z^k)`.
    pub fn compose_zpow(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![BigInt::zero(); self.deg() * k + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            c[i * k] = a.clone();
        }
        Self::new(c)
    }

    /// `z^k p(z)`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        Self::new(c)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// The polynomial divided by its content, with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().unwrap().is_negative() {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Exact quotient `self / q` over the integers.
    pub fn exact_div(&self, q: &IntPoly) -> Result<IntPoly> {
        let not_divisible = || Error::NotDivisible {
            dividend: self.to_string(),
            divisor: q.to_string(),
        };
        if q.is_zero() {
            return domain("division by the zero polynomial");
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (n, m) = (self.deg(), q.deg());
        if n < m {
            return Err(not_divisible());
        }
        let lead = q.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); n - m + 1];
        for k in (0..=n - m).rev() {
            let c = rem[k + m].clone();
            if c.is_zero() {
                continue;
            }
            let (t, r) = c.div_rem(lead);
            if !r.is_zero() {
                return Err(not_divisible());
            }
            for (j, b) in q.coeffs.iter().enumerate() {
                rem[k + j] -= &t * b;
            }
            quot[k] = t;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(not_divisible());
        }
        Ok(Self::new(quot))
    }

    /// Remainder modulo a divisor whose leading coefficient is a unit.
    pub fn rem_monic(&self, m: &IntPoly) -> Result<IntPoly> {
        let lead = match m.leading() {
            Some(l) if l.abs().is_one() => l.clone(),
            _ => return domain("remainder needs a divisor with leading coefficient ±1"),
        };
        let d = m.deg();
        if self.deg() < d || self.is_zero() {
            return Ok(self.clone());
        }
        let mut rem = self.coeffs.clone();
        for k in (d..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let t = &rem[k] * &lead;
            for (j, b) in m.coeffs.iter().enumerate() {
                rem[k - d + j] -= &t * b;
            }
        }
        rem.truncate(d);
        Ok(Self::new(rem))
    }

    /// Pseudo-remainder `lc(q)^(deg p - deg q + 1) p mod q`.
    pub fn pseudo_rem(&self, q: &IntPoly) -> IntPoly {
        assert!(!q.is_zero(), "pseudo-remainder by zero");
        if self.is_zero() || self.deg() < q.deg() {
            return self.clone();
        }
        let d = q.deg();
        let lead = q.leading().unwrap();
        let mut rem = self.coeffs.clone();
        for k in (d..rem.len()).rev() {
            let t = rem[k].clone();
            for c in rem.iter_mut().take(k + 1) {
                *c *= lead;
            }
            if !t.is_zero() {
                for (j, b) in q.coeffs.iter().enumerate() {
                    rem[k - d + j] -= &t * b;
                }
            }
        }
        rem.truncate(d);
        Self::new(rem)
    }

    /// Primitive gcd with positive leading coefficient. `gcd(0, 0)` is zero.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.deg() == 0 {
                return Self::one();
            }
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }

    /// Value at an integer point.
    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Value at a rational point.
    pub fn eval(&self, x: &Rational) -> Rational {
        let h = self.homogeneous_eval(x.numer(), x.denom());
        Rational::new(h, x.denom().pow(self.deg() as u32))
    }

    /// `sum c_j u^j v^(n-j)`, i.e. `v^n p(u/v)`.
    pub fn homogeneous_eval(&self, u: &BigInt, v: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        let mut vpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * u + c * &vpow;
            vpow *= v;
        }
        acc
    }

    /// Sign of the value at a rational point.
    pub fn sign_at(&self, x: &Rational) -> Ordering {
        // denominators of `Rational` are positive
        self.homogeneous_eval(x.numer(), x.denom()).cmp(&BigInt::zero())
    }

    /// Sign of the value as the variable tends to `+inf` (`up`) or `-inf`.
    pub fn sign_at_infinity(&self, up: bool) -> Ordering {
        match self.leading() {
            None => Ordering::Equal,
            Some(l) => {
                let s = l.cmp(&BigInt::zero());
                if up || self.deg().is_multiple_of(2) {
                    s
                } else {
                    s.reverse()
                }
            }
        }
    }

    /// `v^n p(u z / v)`, whose coefficients are `c_j u^j v^(n-j)`.
    pub fn scale_var(&self, u: &BigInt, v: &BigInt) -> IntPoly {
        let n = self.deg();
        let mut upow = Vec::with_capacity(n + 1);
        let mut vpow = Vec::with_capacity(n + 1);
        let (mut a, mut b) = (BigInt::one(), BigInt::one());
        for _ in 0..=n {
            upow.push(a.clone());
            vpow.push(b.clone());
            a *= u;
            b *= v;
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| c * &upow[j] * &vpow[n - j])
                .collect(),
        )
    }

    /// Largest `k` with `z^k` dividing the polynomial, and the quotient.
    pub fn split_z_power(&self) -> (usize, IntPoly) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        (k, Self::new(self.coeffs[k.min(self.coeffs.len())..].to_vec()))
    }

    /// Squarefree decomposition: pairs `(f_i, i)` with `p = c * prod f_i^i`.
    /// Every `f_i` is primitive with positive leading coefficient and
    /// positive degree; the pairs are ordered by increasing multiplicity.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPoly, usize)> {
        let mut out = Vec::new();
        if self.deg() == 0 {
            return out;
        }
        let a = self.primitive_part();
        let mut g = a.gcd(&a.derivative());
        let mut w = a.exact_div(&g).expect("gcd divides").primitive_part();
        let mut i = 1;
        while w.deg() > 0 {
            let y = w.gcd(&g);
            let f = w.exact_div(&y).expect("gcd divides").primitive_part();
            if f.deg() > 0 {
                out.push((f, i));
            }
            g = g.exact_div(&y).expect("gcd divides").primitive_part();
            w = y;
            i += 1;
        }
        out
    }

    /// Maximum absolute value of the coefficients.
    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }

    /// Approximate coefficients as `f64`, for heuristics only.
    pub fn to_f64s(&self) -> Vec<f64> {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        IntPoly::new(c)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: &IntPoly) -> IntPoly {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

/// A sign `±1`, used for the symmetry of a completion and for `ε` in Salem families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_i64(v: i64) -> Result<Sign> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(Error::Parse(format!("expected +1 or -1, got {v}"))),
        }
    }

    pub fn apply(self, p: &IntPoly) -> IntPoly {
        match self {
            Sign::Plus => p.clone(),
            Sign::Minus => -p,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

impl std::str::FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Sign> {
        match s.trim() {
            "+1" | "1" | "+" => Ok(Sign::Plus),
            "-1" | "-" => Ok(Sign::Minus),
            other => Err(Error::Parse(format!("expected +1 or -1, got {other:?}"))),
        }
    }
}
