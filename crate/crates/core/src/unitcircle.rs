//! Certified root location relative to the unit circle and the ray `(1, inf)`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{domain, Error, Result};
use crate::polyring::{Enclosure, IntPoly, Rational};

/// Decimal digits printed for Salem and Pisot numbers unless configured otherwise.
pub const DEFAULT_DIGITS: u32 = 9;

/// Sturm sequence of an integer polynomial, built with primitive pseudo-remainders.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(p: &IntPoly) -> SturmChain {
        let mut chain = vec![p.clone()];
        if p.deg() == 0 {
            return SturmChain { chain };
        }
        chain.push(p.derivative());
        loop {
            let a = &chain[chain.len() - 2];
            let b = &chain[chain.len() - 1];
            if b.deg() == 0 {
                break;
            }
            let mut r = a.pseudo_rem(b);
            let exponent = a.deg() - b.deg() + 1;
            if b.leading().unwrap().is_negative() && exponent % 2 == 1 {
                r = -r;
            }
            if r.is_zero() {
                break;
            }
            let g = r.content();
            let next = IntPoly::new(r.coeffs().iter().map(|c| -(c / &g)).collect());
            chain.push(next);
        }
        SturmChain { chain }
    }

    pub fn polys(&self) -> &[IntPoly] {
        &self.chain
    }

    fn variations<I: Iterator<Item = Ordering>>(signs: I) -> usize {
        let mut last = Ordering::Equal;
        let mut v = 0;
        for s in signs.filter(|s| *s != Ordering::Equal) {
            if last != Ordering::Equal && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    pub fn variations_at_infinity(&self, up: bool) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at_infinity(up)))
    }

    /// Number of distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &Rational, hi: &Rational) -> usize {
        self.variations_at(lo).saturating_sub(self.variations_at(hi))
    }

    /// Number of distinct real roots in `(lo, inf)`.
    pub fn count_above(&self, lo: &Rational) -> usize {
        self.variations_at(lo)
            .saturating_sub(self.variations_at_infinity(true))
    }

    /// Number of distinct real roots in `[lo, hi]`.
    pub fn count_closed(&self, lo: &Rational, hi: &Rational) -> usize {
        let at_lo = usize::from(self.chain[0].sign_at(lo) == Ordering::Equal);
        self.count(lo, hi) + at_lo
    }
}

/// Zeros strictly inside the unit disk, counted with multiplicity, by the
/// Schur–Cohn recursion. Returns `None` when the recursion degenerates,
/// which happens in particular whenever a zero lies on the circle.
pub fn schur_cohn_inside(p: &IntPoly) -> Option<usize> {
    if p.is_zero() {
        return None;
    }
    let (zeros_at_origin, mut q) = p.split_z_power();
    let mut offset = zeros_at_origin as i64;
    let mut sign = 1i64;
    loop {
        let n = q.deg();
        if n == 0 {
            return Some(offset as usize);
        }
        let a0 = q.constant_term();
        let an = q.leading().unwrap().clone();
        let delta = &a0 * &a0 - &an * &an;
        if delta.is_zero() {
            return None;
        }
        let rev = q.reciprocal().expect("nonzero");
        let t = &q.scale(&a0) - &rev.scale(&an);
        if delta.is_negative() {
            offset += sign * n as i64;
            sign = -sign;
        }
        q = t.primitive_part();
        if q.is_zero() {
            return None;
        }
    }
}

/// Zeros with modulus strictly less than `rho`, or `None` on degeneracy.
pub fn count_inside_radius(p: &IntPoly, rho: &Rational) -> Option<usize> {
    if !rho.is_positive() {
        return None;
    }
    schur_cohn_inside(&p.scale_var(rho.numer(), rho.denom()))
}

/// Zeros inside the unit disk of a polynomial known to have none on the circle.
fn inside_off_circle(h: &IntPoly) -> Result<usize> {
    if let Some(k) = schur_cohn_inside(h) {
        return Ok(k);
    }
    // degenerate recursion: compare counts on two nearby circles
    for j in 3..200u32 {
        let eps = Rational::new(BigInt::one(), BigInt::one() << j);
        let below = count_inside_radius(h, &(Rational::one() - &eps));
        let above = count_inside_radius(h, &(Rational::one() + &eps));
        if let (Some(a), Some(b)) = (below, above) {
            if a == b {
                return Ok(a);
            }
        }
    }
    Err(Error::Precision(format!(
        "no nondegenerate circle pair found for {h}"
    )))
}

/// For a palindromic `g` of degree `2m`, the polynomial `T` with
/// `g(z) = z^m T(z + 1/z)`.
pub fn trace_polynomial(g: &IntPoly) -> Result<IntPoly> {
    if g.is_zero() || g.deg() % 2 == 1 || !g.is_reciprocal() {
        return domain(format!("{g} is not palindromic of even degree"));
    }
    let m = g.deg() / 2;
    let x = IntPoly::z_pow(1);
    let mut total = IntPoly::constant(g.coeff(m));
    let mut prev = IntPoly::constant(BigInt::from(2));
    let mut cur = x.clone();
    for k in 1..=m {
        total = &total + &cur.scale(&g.coeff(m + k));
        let next = &(&x * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    Ok(total)
}

/// Zero counts relative to the unit circle, with multiplicity.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct CircleCounts {
    pub inside: usize,
    pub on_circle: usize,
    pub outside: usize,
}

impl CircleCounts {
    fn add_scaled(&mut self, other: CircleCounts, k: usize) {
        self.inside += k * other.inside;
        self.on_circle += k * other.on_circle;
        self.outside += k * other.outside;
    }

    pub fn total(&self) -> usize {
        self.inside + self.on_circle + self.outside
    }
}

fn check_counting_input(p: &IntPoly) -> Result<()> {
    if p.is_zero() {
        return domain("the zero polynomial has no finite root count");
    }
    if p.constant_term().is_zero() {
        return domain(format!("{p} vanishes at 0; factor out z first"));
    }
    Ok(())
}

/// Exact `(inside, on_circle, outside)` counts, with multiplicity.
pub fn count_unit_circle(p: &IntPoly) -> Result<CircleCounts> {
    check_counting_input(p)?;
    let mut total = CircleCounts::default();
    for (f, k) in p.squarefree_decomposition() {
        total.add_scaled(count_squarefree(&f)?, k);
    }
    Ok(total)
}

fn count_squarefree(f: &IntPoly) -> Result<CircleCounts> {
    let mut counts = CircleCounts::default();
    let mut f = f.primitive_part();
    for r in [1i64, -1] {
        if f.eval_int(&BigInt::from(r)).is_zero() {
            f = f.exact_div(&IntPoly::from_i64s(&[-r, 1]))?;
            counts.on_circle += 1;
        }
    }
    if f.deg() == 0 {
        return Ok(counts);
    }
    let g = f.gcd(&f.reciprocal()?);
    let h = f.exact_div(&g)?;
    if g.deg() > 0 {
        let g = if g.is_reciprocal() { g } else { -&g };
        let t = trace_polynomial(&g)?;
        let two = Rational::from_integer(BigInt::from(2));
        let pairs_on = SturmChain::new(&t).count(&-two.clone(), &two);
        let m = g.deg() / 2;
        counts.on_circle += 2 * pairs_on;
        counts.inside += m - pairs_on;
        counts.outside += m - pairs_on;
    }
    if h.deg() > 0 {
        let k = inside_off_circle(&h)?;
        counts.inside += k;
        counts.outside += h.deg() - k;
    }
    Ok(counts)
}

/// Real roots in `(1, inf)`, with multiplicity.
pub fn real_roots_above_one(p: &IntPoly) -> usize {
    let one = Rational::one();
    p.squarefree_decomposition()
        .iter()
        .map(|(f, k)| k * SturmChain::new(f).count_above(&one))
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Label {
    Cyclotomic,
    Salem,
    Pisot,
    Other,
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootLocationCertificate {
    pub inside: usize,
    pub on_circle: usize,
    pub outside: usize,
    pub real_gt_one: usize,
    pub label: Label,
    pub distinguished_root: Option<Enclosure>,
    pub digits: u32,
}

impl RootLocationCertificate {
    /// The distinguished root rounded to the certificate's precision.
    pub fn root_decimal(&self) -> Option<String> {
        self.distinguished_root
            .as_ref()
            .and_then(|e| e.round_decimal(self.digits))
    }
}

impl Serialize for RootLocationCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RootLocationCertificate", 8)?;
        st.serialize_field("inside", &self.inside)?;
        st.serialize_field("on_circle", &self.on_circle)?;
        st.serialize_field("outside", &self.outside)?;
        st.serialize_field("real_gt_one", &self.real_gt_one)?;
        st.serialize_field("label", &self.label)?;
        let bounds = self
            .distinguished_root
            .as_ref()
            .map(|e| e.decimal_bounds(self.digits + 3));
        st.serialize_field("root_lo", &bounds.as_ref().map(|b| b.0.clone()))?;
        st.serialize_field("root_hi", &bounds.as_ref().map(|b| b.1.clone()))?;
        st.serialize_field("root", &self.root_decimal())?;
        st.end()
    }
}

/// Classify with the default 9-digit root enclosure.
pub fn classify(p: &IntPoly) -> Result<RootLocationCertificate> {
    classify_with_digits(p, DEFAULT_DIGITS)
}

pub fn classify_with_digits(p: &IntPoly, digits: u32) -> Result<RootLocationCertificate> {
    check_counting_input(p)?;
    if !p.is_monic() {
        return domain(format!("{p} is not monic"));
    }
    let counts = count_unit_circle(p)?;
    let real_gt_one = real_roots_above_one(p);
    let mut cert = RootLocationCertificate {
        inside: counts.inside,
        on_circle: counts.on_circle,
        outside: counts.outside,
        real_gt_one,
        label: Label::Other,
        distinguished_root: None,
        digits,
    };
    if counts.on_circle == p.deg() {
        cert.label = Label::Cyclotomic;
        return Ok(cert);
    }
    if counts.outside != 1 || real_gt_one != 1 {
        return Ok(cert);
    }
    let root = root_above_one(p, digits)?;
    // With one zero outside, the minimal polynomial m of the root is Salem
    // exactly when it is reciprocal of degree at least 4; reciprocal m forces
    // a single zero inside and a (anti)reciprocal p.
    let symmetric = p.is_reciprocal() || p.is_antireciprocal();
    let salem = counts.inside == 1 && symmetric && !has_reciprocal_quadratic_factor(p, &root)?;
    cert.label = if salem { Label::Salem } else { Label::Pisot };
    cert.distinguished_root = Some(root);
    Ok(cert)
}

/// Whether `z^2 - t z + 1` divides `p` for the integer `t = tau + 1/tau`,
/// where `tau` is the root enclosed by `root` (which lies above 1).
fn has_reciprocal_quadratic_factor(p: &IntPoly, root: &Enclosure) -> Result<bool> {
    let lo = root.lo() + root.lo().recip();
    let hi = root.hi() + root.lo().recip();
    // tau > 1 gives t > 2; t = 2 would be (z - 1)^2
    let first = lo.floor().to_integer().max(BigInt::from(3));
    let last = hi.ceil().to_integer();
    let mut t = first;
    while t <= last {
        let q = IntPoly::new(vec![BigInt::one(), -t.clone(), BigInt::one()]);
        if p.rem_monic(&q)?.is_zero() {
            return Ok(true);
        }
        t += 1;
    }
    Ok(false)
}

fn cauchy_bound(p: &IntPoly) -> Rational {
    let lead = p.leading().expect("nonzero").abs();
    let top = p.coeffs()[..p.deg()]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_default();
    Rational::one() + Rational::new(top, lead)
}

/// Enclosure of the unique real root above 1, refined until its
/// `digits`-decimal rounding is determined.
pub fn root_above_one(p: &IntPoly, digits: u32) -> Result<Enclosure> {
    let one = Rational::one();
    let factor = p
        .squarefree_decomposition()
        .into_iter()
        .map(|(f, _)| f)
        .find(|f| SturmChain::new(f).count_above(&one) > 0)
        .ok_or_else(|| Error::Domain(format!("{p} has no real root above 1")))?;
    let chain = SturmChain::new(&factor);
    if chain.count_above(&one) != 1 {
        return domain(format!("{p} has several real roots above 1"));
    }
    let mut lo = one;
    let mut hi = cauchy_bound(&factor);
    while factor.sign_at(&lo) == Ordering::Equal {
        let mid = (&lo + &hi) / BigInt::from(2);
        if factor.sign_at(&mid) == Ordering::Equal {
            return Ok(Enclosure::point(mid));
        }
        if chain.count(&lo, &mid) == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let enc = Enclosure::new(lo, hi)?;
    refine_bracketed(&factor, enc, digits, true)
}

/// Bisect a sign-change bracket of a single simple root.
fn refine_bracketed(p: &IntPoly, enc: Enclosure, digits: u32, decide_rounding: bool) -> Result<Enclosure> {
    let target = Rational::new(BigInt::one(), BigInt::from(10).pow(digits));
    let mut lo = enc.lo().clone();
    let mut hi = enc.hi().clone();
    let lo_sign = p.sign_at(&lo);
    for _ in 0..4000 {
        let e = Enclosure::new(lo.clone(), hi.clone())?;
        if e.width() < target && (!decide_rounding || e.round_decimal(digits).is_some()) {
            return Ok(e);
        }
        let mid = (&lo + &hi) / BigInt::from(2);
        match p.sign_at(&mid) {
            Ordering::Equal => return Ok(Enclosure::point(mid)),
            s if s == lo_sign => lo = mid,
            _ => hi = mid,
        }
    }
    Err(Error::Precision(format!("{}", &hi - &lo)))
}

/// Enclosure of width below `10^-digits` of the single root of `p` in `bracket`.
pub fn refine_real_root(p: &IntPoly, bracket: &Enclosure, digits: u32) -> Result<Enclosure> {
    let (slo, shi) = (p.sign_at(bracket.lo()), p.sign_at(bracket.hi()));
    if slo == Ordering::Equal || shi == Ordering::Equal || slo == shi {
        return domain(format!("{p} does not change sign on {bracket}"));
    }
    let sqfree = p
        .squarefree_decomposition()
        .into_iter()
        .fold(IntPoly::one(), |acc, (f, _)| &acc * &f);
    if SturmChain::new(&sqfree).count(bracket.lo(), bracket.hi()) != 1 {
        return domain(format!("{p} has several roots in {bracket}"));
    }
    refine_bracketed(p, bracket.clone(), digits, false)
}

/// Whether the monic `m` divides no trinomial `z^n ± z^k ± 1` with
/// `n > k >= 0` and `n <= degree_bound`. For `k = 0` the two lower units
/// share the constant term.
pub fn is_trinomial_zero_free(m: &IntPoly, degree_bound: usize) -> Result<bool> {
    if !m.is_monic() || m.deg() == 0 {
        return domain(format!("{m} is not a monic nonconstant polynomial"));
    }
    let d = m.deg();
    let mut residues: Vec<Vec<BigInt>> = Vec::with_capacity(degree_bound + 1);
    let mut cur = IntPoly::one();
    for _ in 0..=degree_bound {
        let mut v = cur.coeffs().to_vec();
        v.resize(d, BigInt::zero());
        residues.push(v);
        cur = cur.shift(1).rem_monic(m)?;
    }
    for n in 1..=degree_bound {
        for k in 0..n {
            for s1 in [1i64, -1] {
                for s2 in [1i64, -1] {
                    let vanishes = (0..d).all(|i| {
                        let mut c = residues[n][i].clone() + &residues[k][i] * s1;
                        if i == 0 {
                            c += s2;
                        }
                        c.is_zero()
                    });
                    if vanishes {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}
