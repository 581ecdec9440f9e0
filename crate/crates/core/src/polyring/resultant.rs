use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::IntPoly;
use crate::error::{domain, Result};

/// Resultant of two univariate polynomials, as the Sylvester determinant.
pub fn resultant(p: &IntPoly, q: &IntPoly) -> BigInt {
    if p.is_zero() || q.is_zero() {
        return BigInt::zero();
    }
    let (n, m) = (p.deg(), q.deg());
    if n == 0 {
        return p.coeff(0).pow(m as u32);
    }
    if m == 0 {
        return q.coeff(0).pow(n as u32);
    }
    let size = n + m;
    let mut rows = vec![vec![BigInt::zero(); size]; size];
    for i in 0..m {
        for (j, c) in p.coeffs().iter().rev().enumerate() {
            rows[i][i + j] = c.clone();
        }
    }
    for i in 0..n {
        for (j, c) in q.coeffs().iter().rev().enumerate() {
            rows[m + i][i + j] = c.clone();
        }
    }
    bareiss_det(rows)
}

/// Fraction-free Gaussian elimination.
fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// A polynomial in `x` and `y`, stored as coefficients of powers of `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPoly {
    by_y: Vec<IntPoly>,
}

impl BiPoly {
    pub fn new(mut by_y: Vec<IntPoly>) -> BiPoly {
        while by_y.last().is_some_and(IntPoly::is_zero) {
            by_y.pop();
        }
        BiPoly { by_y }
    }

    /// `y a(x) + b(x)`.
    pub fn linear(a: IntPoly, b: IntPoly) -> BiPoly {
        BiPoly::new(vec![b, a])
    }

    pub fn y_degree(&self) -> usize {
        self.by_y.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> IntPoly {
        self.by_y.get(k).cloned().unwrap_or_default()
    }

    /// Apply `f` to every coefficient, e.g. `x -> -x` or `x -> x^2`.
    pub fn map_x(&self, f: impl Fn(&IntPoly) -> IntPoly) -> BiPoly {
        BiPoly::new(self.by_y.iter().map(f).collect())
    }

    /// Substitute `y -> sign * y^pow`.
    pub fn substitute_y(&self, negate: bool, pow: usize) -> BiPoly {
        let mut out = vec![IntPoly::zero(); self.y_degree() * pow + 1];
        for (k, c) in self.by_y.iter().enumerate() {
            out[k * pow] = if negate && k % 2 == 1 { -c } else { c.clone() };
        }
        BiPoly::new(out)
    }

    /// `Res_y(self, other)` when one of the two is linear in `y`.
    pub fn resultant_y(&self, other: &BiPoly) -> Result<IntPoly> {
        if self.y_degree() == 1 {
            return Ok(linear_resultant(self, other));
        }
        if other.y_degree() == 1 {
            let r = linear_resultant(other, self);
            let odd = (self.y_degree() * other.y_degree()) % 2 == 1;
            return Ok(if odd { -r } else { r });
        }
        domain("resultant in y needs one argument linear in y")
    }
}

/// `a^m g(-b/a)` for `f = y a + b` and `g` of degree `m` in `y`.
fn linear_resultant(f: &BiPoly, g: &BiPoly) -> IntPoly {
    let (a, b) = (f.coeff(1), f.coeff(0));
    let neg_b = -&b;
    let m = g.y_degree();
    let mut total = IntPoly::zero();
    for k in 0..=m {
        let term = &(&g.coeff(k) * &neg_b.pow(k as u32)) * &a.pow((m - k) as u32);
        total = &total + &term;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    #[test]
    fn univariate() {
        assert_eq!(resultant(&p("z-1"), &p("z+1")), BigInt::from(2));
        assert_eq!(resultant(&p("z^2-1"), &p("z^3-1")), BigInt::zero());
        // Res(z^2+1, z-a) = a^2+1
        assert_eq!(resultant(&p("z^2+1"), &p("z-3")), BigInt::from(10));
        assert_eq!(resultant(&p("3"), &p("z^2+z+1")), BigInt::from(9));
    }

    #[test]
    fn linear_in_y_matches_sylvester() {
        // eliminate y from y - x and y^2 - 2: x^2 - 2 up to sign
        let f = BiPoly::linear(p("1"), p("-z"));
        let g = BiPoly::new(vec![p("-2"), p("0"), p("1")]);
        assert_eq!(f.resultant_y(&g).unwrap(), p("z^2-2"));
        assert_eq!(g.resultant_y(&f).unwrap(), p("z^2-2"));
        let h = BiPoly::linear(p("z"), p("1"));
        assert_eq!(f.resultant_y(&h).unwrap(), p("z^2+1"));
        assert!(g.resultant_y(&g).is_err());
    }
}
