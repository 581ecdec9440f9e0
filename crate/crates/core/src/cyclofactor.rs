//! Cyclotomic polynomials, cyclotomic stripping and minimal polynomials.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{domain, Result};
use crate::polyring::IntPoly;
use crate::unitcircle::{classify, Label};

/// Euler's totient.
pub fn totient(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn cache() -> &'static Mutex<HashMap<u64, IntPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, IntPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The `d`-th cyclotomic polynomial, by dividing `z^d - 1` by `Phi_e` for
/// the proper divisors `e` of `d`.
pub fn cyclotomic(d: u64) -> Result<IntPoly> {
    if d == 0 {
        return domain("cyclotomic polynomial of index 0");
    }
    if let Some(p) = cache().lock().unwrap().get(&d) {
        return Ok(p.clone());
    }
    let mut q = &IntPoly::z_pow(d as usize) - &IntPoly::one();
    for e in divisors(d) {
        if e < d {
            q = q.exact_div(&cyclotomic(e)?)?;
        }
    }
    cache().lock().unwrap().insert(d, q.clone());
    Ok(q)
}

/// Indices `d` with `phi(d) <= degree`, drawn from `d <= 2 degree^2`
/// (which suffices since `phi(d) >= sqrt(d/2)`).
pub fn candidate_indices(degree: usize) -> Vec<u64> {
    if degree == 0 {
        return Vec::new();
    }
    let limit = 2 * (degree as u64).pow(2);
    (1..=limit.max(2))
        .filter(|&d| totient(d) <= degree as u64)
        .collect()
}

/// `p mod (z^d - 1)`, computed by folding exponents.
fn fold_mod(p: &IntPoly, d: usize) -> IntPoly {
    let mut c = vec![BigInt::zero(); d];
    for (i, a) in p.coeffs().iter().enumerate() {
        c[i % d] += a;
    }
    IntPoly::new(c)
}

/// Whether `Phi_d` divides `p`.
pub fn cyclotomic_divides(p: &IntPoly, d: u64) -> Result<bool> {
    let folded = fold_mod(p, d as usize);
    Ok(folded.rem_monic(&cyclotomic(d)?)?.is_zero())
}

/// Cyclotomic factors with multiplicities, and the cofactor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycFactorization {
    pub factors: Vec<(u64, u32)>,
    pub remainder: IntPoly,
}

impl CycFactorization {
    /// Product of the cyclotomic factors.
    pub fn cyclotomic_part(&self) -> Result<IntPoly> {
        let mut acc = IntPoly::one();
        for &(d, k) in &self.factors {
            acc = &acc * &cyclotomic(d)?.pow(k);
        }
        Ok(acc)
    }

    pub fn expand(&self) -> Result<IntPoly> {
        Ok(&self.cyclotomic_part()? * &self.remainder)
    }

    pub fn cyclotomic_degree(&self) -> usize {
        self.factors
            .iter()
            .map(|&(d, k)| totient(d) as usize * k as usize)
            .sum()
    }
}

/// Written as `(remainder)Phi6(z)Phi12(z)`; a factor `Phi_d^k` is written
/// `Phi_d(z)^k`. Without cyclotomic factors only the remainder is shown.
impl fmt::Display for CycFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "{}", self.remainder);
        }
        if !self.remainder.is_constant() {
            write!(f, "({})", self.remainder)?;
        } else if !self.remainder.coeff(0).is_one() {
            write!(f, "{}", self.remainder)?;
        }
        for &(d, k) in &self.factors {
            write!(f, "Phi{d}(z)")?;
            if k > 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for CycFactorization {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CycFactorization", 2)?;
        st.serialize_field("factors", &self.factors)?;
        st.serialize_field("remainder", &self.remainder)?;
        st.end()
    }
}

/// Complete cyclotomic factorization by trial division.
pub fn strip_cyclotomic(p: &IntPoly) -> Result<CycFactorization> {
    if p.is_zero() {
        return domain("cannot strip the zero polynomial");
    }
    let mut rem = p.clone();
    let mut factors = Vec::new();
    for d in candidate_indices(p.deg()) {
        if totient(d) as usize > rem.deg() {
            continue;
        }
        let mut k = 0;
        while rem.deg() > 0 && cyclotomic_divides(&rem, d)? {
            rem = rem.exact_div(&cyclotomic(d)?)?;
            k += 1;
        }
        if k > 0 {
            factors.push((d, k));
        }
    }
    Ok(CycFactorization {
        factors,
        remainder: rem,
    })
}

/// Minimal polynomial of the Salem number of `s`, as
/// `s / gcd(s, s(-z) s(z^2) s(-z^2))`.
pub fn salem_minpoly(s: &IntPoly) -> Result<IntPoly> {
    let cert = classify(s)?;
    if cert.label != Label::Salem {
        return domain(format!("{s} is not a Salem polynomial ({})", cert.label));
    }
    let a = s.compose_znegz().rem_monic(s)?;
    let b = s.compose_zsq().rem_monic(s)?;
    let c = s.compose_znegz().compose_zsq().rem_monic(s)?;
    let prod = (&(&a * &b).rem_monic(s)? * &c).rem_monic(s)?;
    let g = s.gcd(&prod);
    Ok(s.exact_div(&g)?.primitive_part())
}

/// Minimal polynomial of the Pisot number of `p`, as `p / gcd(p, p*)`,
/// falling back to cyclotomic stripping for reciprocal quadratic Pisot numbers.
pub fn pisot_minpoly(p: &IntPoly) -> Result<IntPoly> {
    let cert = classify(p)?;
    if cert.label != Label::Pisot {
        return domain(format!("{p} is not a Pisot polynomial ({})", cert.label));
    }
    let g = p.gcd(&p.reciprocal()?);
    let m = p.exact_div(&g)?.primitive_part();
    if m.deg() > 0 {
        return Ok(m);
    }
    Ok(strip_cyclotomic(p)?.remainder.primitive_part())
}

/// Whether `m` divides `p` with a (possibly empty) product of cyclotomic
/// polynomials as quotient.
pub fn quotient_is_cyclotomic(p: &IntPoly, m: &IntPoly) -> Result<bool> {
    if m.is_zero() {
        return domain("divisor is the zero polynomial");
    }
    let q = match p.exact_div(m) {
        Ok(q) => q,
        Err(_) => return Ok(false),
    };
    if !q.is_monic() {
        return Ok(false);
    }
    let f = strip_cyclotomic(&q)?;
    Ok(f.remainder == IntPoly::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic(6).unwrap(), p("z^2-z+1"));
        assert_eq!(cyclotomic(1).unwrap(), p("z-1"));
        assert_eq!(cyclotomic(30).unwrap(), p("z^8+z^7-z^5-z^4-z^3+z+1"));
        assert_eq!(cyclotomic(105).unwrap().coeff(7), BigInt::from(-2));
        assert!(cyclotomic(0).is_err());
    }

    #[test]
    fn totients() {
        let expected = [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4];
        for (i, &t) in expected.iter().enumerate() {
            assert_eq!(totient(i as u64 + 1), t);
        }
    }

    #[test]
    fn stripping_examples() {
        let f = strip_cyclotomic(&p("z^20-z^19-z^10-z+1")).unwrap();
        assert_eq!(f.factors, vec![(6, 1), (12, 1)]);
        assert_eq!(f.remainder, p("z^14-z^11-z^10+z^7-z^4-z^3+1"));
        assert_eq!(
            f.to_string(),
            "(z^14-z^11-z^10+z^7-z^4-z^3+1)Phi6(z)Phi12(z)"
        );
        let f = strip_cyclotomic(&p("z^3-z-1")).unwrap();
        assert!(f.factors.is_empty());
        assert_eq!(f.to_string(), "z^3-z-1");
        let f = strip_cyclotomic(&p("z^5-z^4-1")).unwrap();
        assert_eq!(f.factors, vec![(6, 1)]);
        assert_eq!(f.remainder, p("z^3-z-1"));
        let cubed = &p("z-1").pow(3) * &p("z+1");
        let f = strip_cyclotomic(&cubed).unwrap();
        assert_eq!(f.factors, vec![(1, 3), (2, 1)]);
        assert_eq!(f.to_string(), "Phi1(z)^3Phi2(z)");
    }

    #[test]
    fn minimal_polynomials() {
        let lehmer = p("z^10+z^9-z^7-z^6-z^5-z^4-z^3+z+1");
        assert_eq!(salem_minpoly(&p("z^12-z^7-z^6-z^5+1")).unwrap(), lehmer);
        assert_eq!(salem_minpoly(&p("z^14-z^11-z^7-z^3+1")).unwrap(), lehmer);
        let m = p("z^10-z^6-z^5-z^4+1");
        assert_eq!(salem_minpoly(&m).unwrap(), m);
        assert!(salem_minpoly(&p("z^3-z-1")).is_err());

        assert_eq!(pisot_minpoly(&p("z^5-z^4-1")).unwrap(), p("z^3-z-1"));
        assert_eq!(pisot_minpoly(&p("z^3-z-1")).unwrap(), p("z^3-z-1"));
        assert_eq!(pisot_minpoly(&p("z^3-2z^2+1")).unwrap(), p("z^2-z-1"));
        let reciprocal_pisot = &p("z^2-3z+1") * &p("z^2+1");
        assert_eq!(pisot_minpoly(&reciprocal_pisot).unwrap(), p("z^2-3z+1"));
    }

    #[test]
    fn cyclotomic_quotients() {
        let lehmer = p("z^10+z^9-z^7-z^6-z^5-z^4-z^3+z+1");
        assert!(quotient_is_cyclotomic(&p("z^12-z^7-z^6-z^5+1"), &lehmer).unwrap());
        assert!(quotient_is_cyclotomic(&lehmer, &lehmer).unwrap());
        assert!(!quotient_is_cyclotomic(&p("z^3-z-1"), &lehmer).unwrap());
        let other = &lehmer * &p("z^3-z-1");
        assert!(!quotient_is_cyclotomic(&other, &lehmer).unwrap());
    }
}
