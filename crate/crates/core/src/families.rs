//! Salem's construction `P_n = z^n P(z) + eps P*(z)` over a Pisot polynomial `P`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::circle::circle_min_lower_bound;
use crate::cyclofactor::{cyclotomic, strip_cyclotomic, totient, CycFactorization};
use crate::error::{domain, Error, Result};
use crate::polyring::{eval_interval, Enclosure, IntPoly, Rational, Sign};
use crate::unitcircle::{classify, root_above_one, Label};

/// Default bound for the scan for Pisot exceptions.
pub const DEFAULT_EXCEPTION_BOUND: u64 = 500;

/// A Salem family `(P, eps)`. A reducible `P` is normalised by dividing out
/// `R = gcd(P, P*)`, so that `P_n = R (z^n P' + eps' P'*)` with `P'` the
/// irreducible Pisot factor; `eps'` absorbs the symmetry sign of `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    input: IntPoly,
    input_eps: Sign,
    pisot: IntPoly,
    reciprocal: IntPoly,
    eps: Sign,
    extra: IntPoly,
}

impl Family {
    pub fn new(p: &IntPoly, eps: Sign) -> Result<Family> {
        let cert = classify(p)?;
        if cert.label != Label::Pisot {
            return domain(format!("{p} is not a Pisot polynomial ({})", cert.label));
        }
        let extra = p.gcd(&p.reciprocal()?);
        let pisot = p.exact_div(&extra)?;
        let norm_eps = if extra.is_reciprocal() { eps } else { eps.flip() };
        Ok(Family {
            input: p.clone(),
            input_eps: eps,
            reciprocal: pisot.reciprocal()?,
            pisot,
            eps: norm_eps,
            extra,
        })
    }

    pub fn input(&self) -> &IntPoly {
        &self.input
    }

    pub fn input_eps(&self) -> Sign {
        self.input_eps
    }

    /// The irreducible Pisot factor `P'`.
    pub fn pisot(&self) -> &IntPoly {
        &self.pisot
    }

    /// `P'*`.
    pub fn reciprocal(&self) -> &IntPoly {
        &self.reciprocal
    }

    /// The sign used with `P'`.
    pub fn eps(&self) -> Sign {
        self.eps
    }

    /// The constant cyclotomic factor `R` (1 for irreducible input).
    pub fn extra_factor(&self) -> &IntPoly {
        &self.extra
    }

    /// `z^n P + eps P*` for the input polynomial.
    pub fn poly(&self, n: u64) -> IntPoly {
        let rev = self.input.reciprocal().expect("nonzero");
        &self.input.shift(n as usize) + &self.input_eps.apply(&rev)
    }

    /// `z^n P' + eps' P'*`, i.e. `poly(n) / R`.
    pub fn core_poly(&self, n: u64) -> IntPoly {
        &self.pisot.shift(n as usize) + &self.eps.apply(&self.reciprocal)
    }

    /// If `p = poly(n)` for some `n >= 1`, that `n`.
    pub fn index_of(&self, p: &IntPoly) -> Option<u64> {
        let n = p.deg().checked_sub(self.input.deg())? as u64;
        (n >= 1 && self.poly(n) == *p).then_some(n)
    }

    /// `r = (Q'(1) - P'(1)) / P(1)`.
    pub fn r_value(&self) -> Rational {
        let one = BigInt::one();
        let dq = self.reciprocal.derivative().eval_int(&one);
        let dp = self.pisot.derivative().eval_int(&one);
        Rational::new(dq - dp, self.pisot.eval_int(&one))
    }

    pub fn default_n0_limit(&self) -> u64 {
        let r = self.r_value().abs().ceil().to_integer();
        let r: u64 = r.try_into().unwrap_or(0);
        r + self.pisot.deg() as u64 + 16
    }

    /// One more than the largest `n <= search_limit` for which `P_n` is not
    /// a Salem polynomial. Fails if `P_limit` itself is not Salem.
    pub fn find_n0(&self, search_limit: u64) -> Result<u64> {
        let mut last_bad = 0;
        for n in 1..=search_limit {
            if classify(&self.core_poly(n))?.label != Label::Salem {
                last_bad = n;
            }
        }
        if last_bad == search_limit {
            return Err(Error::NotFound(format!(
                "P_n is not Salem at n = {search_limit}"
            )));
        }
        Ok(last_bad + 1)
    }

    /// The polynomials whose cyclotomic factors contain every `Phi_d` that
    /// can divide some `P_n`.
    pub fn elimination_polys(&self) -> Vec<(&'static str, IntPoly)> {
        let p = &self.pisot;
        let q = &self.reciprocal;
        let pm = p.compose_znegz();
        let qm = q.compose_znegz();
        let p2 = p.compose_zsq();
        let q2 = q.compose_zsq();
        let pm2 = pm.compose_zsq();
        let qm2 = qm.compose_zsq();
        let pp = p * p;
        let qq = q * q;
        let a = q * &pm;
        let b = &qm * p;
        let e = |x: &IntPoly| self.eps.apply(x);
        vec![
            ("R1+", &a + &b),
            ("R1-", &a - &b),
            ("R2", &(&qq * &p2) + &e(&(&q2 * &pp))),
            ("R3+", &(&qq * &pm2) + &e(&(&qm2 * &pp))),
            ("R3-", &(&qq * &pm2) - &e(&(&qm2 * &pp))),
        ]
    }

    /// Pairs `(a, d)` such that `Phi_d | P'_n` exactly when `n = a (mod d)`,
    /// sorted by `d`.
    pub fn cyclotomic_schedule(&self) -> Result<Vec<(u64, u64)>> {
        let mut candidates: Vec<u64> = Vec::new();
        for (_, r) in self.elimination_polys() {
            if r.is_zero() {
                continue;
            }
            for (d, _) in strip_cyclotomic(&r)?.factors {
                candidates.push(d);
            }
        }
        candidates.sort_unstable();
        candidates.dedup();
        let mut schedule = Vec::new();
        for d in candidates {
            if let Some(a) = self.least_index_divisible(d)? {
                schedule.push((a, d));
            }
        }
        Ok(schedule)
    }

    /// Least `n` in `[0, d)` with `Phi_d | P'_n`.
    fn least_index_divisible(&self, d: u64) -> Result<Option<u64>> {
        let phi = cyclotomic(d)?;
        let pm = self.pisot.rem_monic(&phi)?;
        let qm = self.eps.apply(&self.reciprocal.rem_monic(&phi)?);
        let mut zn = IntPoly::one();
        for n in 0..d {
            if (&(&zn * &pm) + &qm).rem_monic(&phi)?.is_zero() {
                return Ok(Some(n));
            }
            zn = zn.shift(1).rem_monic(&phi)?;
        }
        Ok(None)
    }

    /// The degree formula `f_n = n + base_offset - F(n)` for the minimal
    /// polynomial of `rho_n`, valid away from repeated-factor indices.
    pub fn degree_schedule(&self) -> Result<DegreeSchedule> {
        let mut base = self.pisot.deg() as i64;
        let mut terms = Vec::new();
        for (a, d) in self.cyclotomic_schedule()? {
            if d == 1 {
                base -= 1;
            } else {
                terms.push((a, d, totient(d)));
            }
        }
        Ok(DegreeSchedule {
            base_offset: base,
            terms,
        })
    }

    /// Enclosure of the Pisot number `theta` of `P'`.
    pub fn theta(&self, digits: u32) -> Result<Enclosure> {
        root_above_one(&self.pisot, digits)
    }

    /// Whether `rho_n` increases with `n`, i.e. whether `eps Q(theta) > 0`.
    pub fn increasing(&self) -> Result<bool> {
        for digits in [20u32, 60, 200] {
            let theta = self.theta(digits)?;
            let v = eval_interval(&self.eps.apply(&self.reciprocal), &theta, 4 * digits);
            match v.sign() {
                Some(Ordering::Greater) => return Ok(true),
                Some(Ordering::Less) => return Ok(false),
                _ => {}
            }
        }
        Err(Error::Precision("sign of eps Q(theta) undecided".into()))
    }

    /// Enclosures of `rho_n` for `n_from <= n <= n_to`, refined until they
    /// are pairwise disjoint and ordered as predicted by `increasing`.
    pub fn rho_sequence(&self, n_from: u64, n_to: u64, digits: u32) -> Result<Vec<Enclosure>> {
        let up = self.increasing()?;
        let mut d = digits;
        loop {
            let encs = (n_from..=n_to)
                .map(|n| root_above_one(&self.core_poly(n), d))
                .collect::<Result<Vec<_>>>()?;
            let ordered = encs.windows(2).all(|w| {
                if up {
                    w[0].strictly_below(&w[1])
                } else {
                    w[1].strictly_below(&w[0])
                }
            });
            if ordered {
                return Ok(encs);
            }
            if d >= digits + 60 {
                let width = encs.iter().map(Enclosure::width).max().unwrap_or_default();
                return Err(Error::Precision(width.to_string()));
            }
            d += 10;
        }
    }

    /// Indices `n` for which `P'_n` has a repeated factor, with the certified
    /// bound up to which all `n` were checked.
    pub fn repeated_factor_indices(&self) -> Result<RepeatedFactors> {
        let p = &self.pisot;
        let q = &self.reciprocal;
        let num = (&(p * &q.derivative()) - &(q * &p.derivative())).length();
        let m = (10..=30)
            .step_by(10)
            .find_map(|depth| circle_min_lower_bound(p, &Rational::one(), depth))
            .ok_or_else(|| Error::Precision("no lower bound for |P| on the circle".into()))?;
        let sup = Rational::from_integer(num) / (&m * &m);
        let bound: u64 = sup.floor().to_integer().try_into().unwrap_or(u64::MAX);
        let indices = (1..=bound)
            .filter(|&n| {
                let f = self.core_poly(n);
                f.gcd(&f.derivative()).deg() > 0
            })
            .collect();
        Ok(RepeatedFactors { indices, bound })
    }

    /// Indices `n <= bound` where `rho_n` is a Pisot number, detected as a
    /// factor `z^2 - t z + 1` (`t >= 3`) of `P'_n`.
    pub fn pisot_exception_indices(&self, bound: u64) -> Result<Vec<u64>> {
        let p = &self.pisot;
        let q = self.eps.apply(&self.reciprocal);
        let max_coeff = p.max_abs_coeff() + q.max_abs_coeff();
        let t_max = max_coeff + BigInt::from(3);
        let mut hits = Vec::new();
        let mut t = BigInt::from(3);
        while t <= t_max {
            let quad = IntPoly::new(vec![BigInt::one(), -t.clone(), BigInt::one()]);
            let pr = p.rem_monic(&quad)?;
            let qr = q.rem_monic(&quad)?;
            let (pu, pv) = (pr.coeff(1), pr.coeff(0));
            let (qu, qv) = (qr.coeff(1), qr.coeff(0));
            // z^n = u z + v modulo the quadratic
            let (mut u, mut v) = (BigInt::one(), BigInt::zero());
            for n in 1..=bound {
                let lin = &u * &pu * &t + &u * &pv + &v * &pu + &qu;
                let cst = &v * &pv - &u * &pu + &qv;
                if lin.is_zero() && cst.is_zero() {
                    hits.push(n);
                }
                let nu = &u * &t + &v;
                v = -u;
                u = nu;
            }
            t += 1;
        }
        hits.sort_unstable();
        hits.dedup();
        Ok(hits)
    }

    /// Whether the Salem number with minimal polynomial `m` and enclosure
    /// `tau` is some `rho_n`, and if so for which `n`. Only `n >= n0` can
    /// match; from there `rho_n` is monotone, so the scan stops once it has
    /// passed `tau`, or at `max_n`.
    pub fn salem_index(&self, m: &IntPoly, tau: &Enclosure, n0: u64, max_n: u64) -> Result<Option<u64>> {
        let up = self.increasing()?;
        let theta = self.theta(30)?;
        let beyond = if up {
            !tau.strictly_below(&theta)
        } else {
            !theta.strictly_below(tau)
        };
        if beyond {
            return Ok(None);
        }
        let prec = 200;
        let p_tau = eval_interval(&self.pisot, tau, prec);
        let q_tau = eval_interval(&self.eps.apply(&self.reciprocal), tau, prec);
        let p_mod = self.pisot.rem_monic(m)?;
        let q_mod = self.eps.apply(&self.reciprocal).rem_monic(m)?;
        let mut zn = IntPoly::one();
        let mut tau_n = Enclosure::point(Rational::one());
        for n in 1..=max_n {
            zn = zn.shift(1).rem_monic(m)?;
            tau_n = tau_n.mul(tau).round_outward(prec);
            if n < n0 {
                continue;
            }
            if (&(&zn * &p_mod) + &q_mod).rem_monic(m)?.is_zero() {
                return Ok(Some(n));
            }
            // P'_n(tau) > 0 exactly when tau > rho_n
            let passed = match tau_n.mul(&p_tau).add(&q_tau).sign() {
                Some(Ordering::Less) => up,
                Some(Ordering::Greater) => !up,
                _ => false,
            };
            if passed {
                return Ok(None);
            }
        }
        Ok(None)
    }

    /// Full derived data with default bounds.
    pub fn analyze(&self) -> Result<FamilySpec> {
        self.analyze_with(self.default_n0_limit(), DEFAULT_EXCEPTION_BOUND)
    }

    pub fn analyze_with(&self, n0_limit: u64, exception_bound: u64) -> Result<FamilySpec> {
        let repeated = self.repeated_factor_indices()?;
        Ok(FamilySpec {
            pisot: self.input.clone(),
            eps: self.input_eps,
            reciprocal: self.input.reciprocal()?,
            extra_factor: strip_cyclotomic(&self.extra)?,
            r: self.r_value(),
            n0: self.find_n0(n0_limit)?,
            schedule: self.cyclotomic_schedule()?,
            degree_schedule: self.degree_schedule()?,
            repeated_factor_indices: repeated.indices,
            repeated_factor_bound: repeated.bound,
            pisot_exception_indices: self.pisot_exception_indices(exception_bound)?,
            exceptions_checked_up_to: exception_bound,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepeatedFactors {
    pub indices: Vec<u64>,
    pub bound: u64,
}

/// `F(n) = sum weight [n = residue mod modulus]` and `f_n = n + base_offset - F(n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeSchedule {
    pub base_offset: i64,
    pub terms: Vec<(u64, u64, u64)>,
}

impl DegreeSchedule {
    pub fn f_value(&self, n: u64) -> u64 {
        self.terms
            .iter()
            .filter(|(j, k, _)| n % k == *j)
            .map(|t| t.2)
            .sum()
    }

    pub fn period(&self) -> u64 {
        self.terms.iter().fold(1, |acc, t| acc.lcm(&t.1))
    }

    pub fn degree(&self, n: u64) -> i64 {
        n as i64 + self.base_offset - self.f_value(n) as i64
    }
}

/// A family together with its derived data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub pisot: IntPoly,
    pub eps: Sign,
    pub reciprocal: IntPoly,
    pub extra_factor: CycFactorization,
    pub r: Rational,
    pub n0: u64,
    pub schedule: Vec<(u64, u64)>,
    pub degree_schedule: DegreeSchedule,
    pub repeated_factor_indices: Vec<u64>,
    pub repeated_factor_bound: u64,
    pub pisot_exception_indices: Vec<u64>,
    pub exceptions_checked_up_to: u64,
}

impl FamilySpec {
    /// Degree of the minimal polynomial of `rho_n`.
    pub fn min_degree(&self, n: u64) -> Result<usize> {
        if n < self.n0 {
            return domain(format!("n = {n} is below n0 = {}", self.n0));
        }
        if self.repeated_factor_indices.contains(&n) {
            return domain(format!("P_{n} has a repeated factor"));
        }
        let d = self.degree_schedule.degree(n);
        usize::try_from(d).map_err(|_| Error::Domain(format!("negative degree at n = {n}")))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "P": self.pisot.to_string(),
            "eps": self.eps.value(),
            "r": self.r.to_string(),
            "n0": self.n0,
            "schedule": self.schedule.iter().map(|&(a, d)| [a, d]).collect::<Vec<_>>(),
            "cyclotomic_factor": self.extra_factor.to_string(),
            "repeated_factor_indices": self.repeated_factor_indices,
            "repeated_factor_bound": self.repeated_factor_bound,
            "pisot_exception_indices": self.pisot_exception_indices,
            "exceptions_checked_up_to": self.exceptions_checked_up_to,
        })
    }
}

/// A Pisot polynomial of length 3 with its cyclotomic factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InventoryEntry {
    pub poly: IntPoly,
    pub factorization: CycFactorization,
}

/// Largest degree of a trinomial Pisot polynomial; beyond it a second zero
/// leaves the unit disk.
pub const TRINOMIAL_DEGREE_LIMIT: usize = 5;

/// `z - 2` followed by every Pisot `z^n - z^k - 1` with `1 <= k < n <= 5`.
pub fn trinomial_pisot_inventory() -> Result<Vec<InventoryEntry>> {
    let mut polys = vec![IntPoly::from_i64s(&[-2, 1])];
    for n in 1..=TRINOMIAL_DEGREE_LIMIT {
        for k in 1..n {
            let mut c = vec![BigInt::zero(); n + 1];
            c[n] = BigInt::one();
            c[k] = BigInt::from(-1);
            c[0] = BigInt::from(-1);
            polys.push(IntPoly::new(c));
        }
    }
    let mut out = Vec::new();
    for p in polys {
        if classify(&p)?.label == Label::Pisot {
            out.push(InventoryEntry {
                factorization: strip_cyclotomic(&p)?,
                poly: p,
            });
        }
    }
    Ok(out)
}

/// The Salem families of length 6: every inventory polynomial with both signs.
pub fn inventory_families() -> Result<Vec<Family>> {
    let mut out = Vec::new();
    for entry in trinomial_pisot_inventory()? {
        for eps in [Sign::Plus, Sign::Minus] {
            out.push(Family::new(&entry.poly, eps)?);
        }
    }
    Ok(out)
}
