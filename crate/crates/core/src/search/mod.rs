//! Enumeration of Salem polynomials of a given length with their Salem
//! number in a rational interval `[a, b]`.
//!
//! A polynomial of length `l` with unit coefficients is written top-down as
//! `z^n + e1 z^(n-g1) + e2 z^(n-g1-g2) + ...`. The prefixes are
//! `Q_1 = 1`, `Q_(i+1) = z^(g_i) Q_i + e_i`; by symmetry the first half of
//! the gaps determines the polynomial. A gap of 0 merges two units of the
//! same sign into one coefficient of modulus 2 (or 3 at the centre).

pub mod bounds;
pub mod code;
pub mod shortness;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclofactor::{quotient_is_cyclotomic, salem_minpoly, strip_cyclotomic, CycFactorization};
use crate::error::{domain, Error, Result};
use crate::families::{inventory_families, Family};
use crate::polyring::{Enclosure, IntPoly, Rational, Sign};
use crate::unitcircle::{classify_with_digits, root_above_one, Label, DEFAULT_DIGITS};

pub use bounds::{gap_bound, goncalves_upper_bound, GapBound};
pub use code::SporadicCode;
pub use shortness::{shortness, ShortnessResult};

/// Prefixes with this many units are handed to the worker pool.
const SPLIT_UNITS: usize = 3;
/// Largest `n` scanned when matching a Salem number against a family.
const FAMILY_SCAN_LIMIT: u64 = 20_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub length: usize,
    pub min: Rational,
    pub max: Rational,
    /// Cap on every gap bound; a cap that binds makes the search incomplete.
    pub max_gap_override: Option<u64>,
    /// Decimal digits of the reported Salem numbers.
    pub digits: u32,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    /// Compute the `f` and `5` annotations of each Salem number.
    pub flags: bool,
}

impl SearchConfig {
    pub fn new(length: usize, min: Rational, max: Rational) -> Result<SearchConfig> {
        let cfg = SearchConfig {
            length,
            min,
            max,
            max_gap_override: None,
            digits: DEFAULT_DIGITS,
            jobs: None,
            flags: false,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.length < 5 {
            return domain(format!("length {} is below 5", self.length));
        }
        if self.min <= Rational::one() || self.min >= self.max {
            return domain(format!("need 1 < a < b, got [{}, {}]", self.min, self.max));
        }
        if self.jobs == Some(0) {
            return domain("jobs must be positive");
        }
        Ok(())
    }
}

/// A Pisot (or Salem) polynomial `P` with sign `eps`, with `P_n = z^n P + eps P*`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct FamilyRef {
    pub pisot: IntPoly,
    pub eps: Sign,
    pub n: u64,
}

/// A Salem polynomial found by the search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SalemHit {
    pub poly: IntPoly,
    pub root: Enclosure,
    pub minpoly: IntPoly,
    pub factorization: CycFactorization,
    pub code: Option<SporadicCode>,
    pub family: Option<FamilyRef>,
    /// `f` if the Salem number is some `rho_n` of a length-6 family,
    /// `5` if it has shortness 5. Empty unless requested.
    pub flags: String,
    digits: u32,
}

impl SalemHit {
    pub fn salem_number(&self) -> String {
        self.root
            .round_decimal(self.digits)
            .unwrap_or_else(|| self.root.midpoint().to_string())
    }

    fn sort_key(&self) -> (Rational, usize, &IntPoly) {
        (self.root.midpoint(), self.poly.deg(), &self.poly)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "polynomial": self.poly.to_string(),
            "code": self.code.map(|c| c.to_string()),
            "salem_number": self.salem_number(),
            "min_poly": self.minpoly.to_string(),
            "min_poly_degree": self.minpoly.deg(),
            "factorization": self.factorization.to_string(),
            "family": self.family.as_ref().map(|f| serde_json::json!({
                "P": f.pisot.to_string(), "eps": f.eps.value(), "n": f.n,
            })),
            "shortness_flags": self.flags,
        })
    }
}

/// A prefix whose continuations form an infinite family `z^n Q + eps Q*`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FamilyHit {
    pub prefix: IntPoly,
    pub eps: Sign,
    pub label: Label,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ObstructionReason {
    /// The prefix has a single zero outside the circle, in `[a, b]`, before
    /// the middle of the pattern.
    SingleZero(Label),
    /// No Rouché circle could be certified.
    RoucheFailed,
}

impl std::fmt::Display for ObstructionReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ObstructionReason::SingleZero(l) => write!(f, "single zero outside the circle ({l})"),
            ObstructionReason::RoucheFailed => f.write_str("no certified Rouché circle"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Obstruction {
    pub prefix: IntPoly,
    pub reason: ObstructionReason,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TruncatedBound {
    pub prefix: IntPoly,
    pub bound: u64,
    pub cap: u64,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub config: SearchConfig,
    /// Salem polynomials outside the infinite families.
    pub sporadic: Vec<SalemHit>,
    /// Salem polynomials of the form `z^n P + eps P*` met along the way.
    pub family_members: Vec<SalemHit>,
    pub family_hits: Vec<FamilyHit>,
    pub obstructions: Vec<Obstruction>,
    pub truncated_bounds: Vec<TruncatedBound>,
    /// Number of completed patterns examined.
    pub candidates: u64,
    pub exhaustive: bool,
}

impl SearchReport {
    /// All Salem polynomials found, sporadic or not, in report order.
    pub fn all_salem(&self) -> Vec<&SalemHit> {
        let mut all: Vec<&SalemHit> = self.sporadic.iter().chain(&self.family_members).collect();
        all.sort_by(|x, y| x.sort_key().cmp(&y.sort_key()));
        all
    }

    pub const CSV_HEADER: [&'static str; 6] = [
        "code",
        "polynomial",
        "salem_number",
        "min_poly_degree",
        "factorization",
        "shortness_flags",
    ];

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Data(e.to_string());
        w.write_record(Self::CSV_HEADER).map_err(io)?;
        for hit in &self.sporadic {
            w.write_record([
                hit.code.map(|c| c.spaced()).unwrap_or_default(),
                hit.poly.to_string(),
                hit.salem_number(),
                hit.minpoly.deg().to_string(),
                hit.factorization.to_string(),
                hit.flags.clone(),
            ])
            .map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Data(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Data(e.to_string()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "length": self.config.length,
            "min": self.config.min.to_string(),
            "max": self.config.max.to_string(),
            "exhaustive": self.exhaustive,
            "candidates": self.candidates,
            "sporadic": self.sporadic.iter().map(SalemHit::to_json).collect::<Vec<_>>(),
            "family_members": self.family_members.iter().map(SalemHit::to_json).collect::<Vec<_>>(),
            "family_hits": self.family_hits.iter().map(|h| serde_json::json!({
                "P": h.prefix.to_string(), "eps": h.eps.value(), "label": h.label.to_string(),
            })).collect::<Vec<_>>(),
            "obstructions": self.obstructions.iter().map(|o| serde_json::json!({
                "prefix": o.prefix.to_string(), "reason": o.reason.to_string(),
            })).collect::<Vec<_>>(),
            "truncated_bounds": self.truncated_bounds.iter().map(|t| serde_json::json!({
                "prefix": t.prefix.to_string(), "bound": t.bound, "cap": t.cap,
            })).collect::<Vec<_>>(),
        })
    }

    /// A plain-text table of the sporadic polynomials and a summary.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let width = self
            .sporadic
            .iter()
            .map(|h| h.poly.to_string().len())
            .max()
            .unwrap_or(0)
            .max(10);
        for hit in &self.sporadic {
            let code = hit.code.map(|c| format!("[{c}]")).unwrap_or_default();
            let _ = writeln!(
                out,
                "{}  {:<width$}  deg {:>3}  {:<4} {}",
                hit.salem_number(),
                hit.poly.to_string(),
                hit.minpoly.deg(),
                hit.flags,
                code,
            );
        }
        let _ = writeln!(
            out,
            "{} sporadic, {} family members, {} family hits, {} candidates, exhaustive: {}",
            self.sporadic.len(),
            self.family_members.len(),
            self.family_hits.len(),
            self.candidates,
            self.exhaustive
        );
        for h in &self.family_hits {
            let _ = writeln!(out, "family: z^n({}) {} ({})", h.prefix, h.eps, h.label);
        }
        for o in &self.obstructions {
            let _ = writeln!(out, "obstruction: {}: {}", o.prefix, o.reason);
        }
        for t in &self.truncated_bounds {
            let _ = writeln!(out, "truncated: {} bound {} capped at {}", t.prefix, t.bound, t.cap);
        }
        out
    }
}

/// The inventory families with their thresholds.
fn inventory() -> &'static [(Family, u64)] {
    static INVENTORY: OnceLock<Vec<(Family, u64)>> = OnceLock::new();
    INVENTORY.get_or_init(|| {
        inventory_families()
            .and_then(|fams| {
                fams.into_iter()
                    .map(|f| {
                        let n0 = f.find_n0(f.default_n0_limit())?;
                        Ok((f, n0))
                    })
                    .collect()
            })
            .expect("inventory families are well formed")
    })
}

/// Whether the Salem number `tau` with minimal polynomial `m` is some
/// `rho_n` of an inventory family.
pub fn in_inventory_family(m: &IntPoly, tau: &Enclosure) -> Result<bool> {
    for (f, n0) in inventory() {
        if f.salem_index(m, tau, *n0, FAMILY_SCAN_LIMIT)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

#[derive(Clone, Debug)]
struct Node {
    q: IntPoly,
    used: usize,
}

#[derive(Default)]
struct Partial {
    hits: Vec<SalemHit>,
    family_hits: Vec<FamilyHit>,
    obstructions: Vec<Obstruction>,
    truncated: Vec<TruncatedBound>,
    candidates: u64,
}

impl Partial {
    fn merge(&mut self, other: Partial) {
        self.hits.extend(other.hits);
        self.family_hits.extend(other.family_hits);
        self.obstructions.extend(other.obstructions);
        self.truncated.extend(other.truncated);
        self.candidates += other.candidates;
    }
}

struct Engine<'a> {
    cfg: &'a SearchConfig,
    half: usize,
    odd: bool,
}

impl Engine<'_> {
    fn explore(&self, node: Node, out: &mut Partial, frontier: Option<&mut Vec<Node>>) -> Result<()> {
        let (a, b) = (&self.cfg.min, &self.cfg.max);
        let middle = !self.odd && node.used == self.half;
        let mut g_max = match gap_bound(&node.q, node.used, self.cfg.length, a, b)? {
            GapBound::Finite(g) | GapBound::Rouche { bound: g, .. } => g,
            GapBound::Empty => return Ok(()),
            GapBound::SingleZero(label) if middle => {
                for eps in [Sign::Plus, Sign::Minus] {
                    out.family_hits.push(FamilyHit {
                        prefix: node.q.clone(),
                        eps,
                        label,
                    });
                }
                return Ok(());
            }
            GapBound::SingleZero(label) => {
                out.obstructions.push(Obstruction {
                    prefix: node.q,
                    reason: ObstructionReason::SingleZero(label),
                });
                return Ok(());
            }
            GapBound::RoucheFailed => {
                out.obstructions.push(Obstruction {
                    prefix: node.q,
                    reason: ObstructionReason::RoucheFailed,
                });
                return Ok(());
            }
        };
        if let Some(cap) = self.cfg.max_gap_override {
            if g_max > cap {
                out.truncated.push(TruncatedBound {
                    prefix: node.q.clone(),
                    bound: g_max,
                    cap,
                });
                g_max = cap;
            }
        }
        let g_min = u64::from(node.used == 1);
        let reverse = node.q.reciprocal()?;
        if middle {
            let d = node.q.deg();
            for g in 0..=g_max {
                for sym in [Sign::Plus, Sign::Minus] {
                    if g == 0 && sym == Sign::Minus {
                        continue;
                    }
                    let p = &node.q.shift(d + g as usize) + &sym.apply(&reverse);
                    self.test(p, Some((&node.q, sym)), out)?;
                }
            }
            return Ok(());
        }
        let low_sign = node.q.constant_term().signum();
        let mut frontier = frontier;
        for g in g_min..=g_max {
            for eps in [Sign::Plus, Sign::Minus] {
                if g == 0 && low_sign != BigInt::from(eps.value()) {
                    continue;
                }
                let q = &node.q.shift(g as usize) + &eps.apply(&IntPoly::one());
                if self.odd && node.used == self.half {
                    let p = &q.shift(q.deg()) + &reverse;
                    self.test(p, None, out)?;
                    continue;
                }
                let child = Node {
                    q,
                    used: node.used + 1,
                };
                match frontier.as_deref_mut() {
                    Some(tasks) if child.used >= SPLIT_UNITS => tasks.push(child),
                    Some(tasks) => self.explore(child, out, Some(tasks))?,
                    None => self.explore(child, out, None)?,
                }
            }
        }
        Ok(())
    }

    /// Classify a completed pattern; `half` is the prefix and sign of an
    /// even-length completion `z^n Q + sym Q*`.
    fn test(&self, p: IntPoly, half: Option<(&IntPoly, Sign)>, out: &mut Partial) -> Result<()> {
        out.candidates += 1;
        if p.sign_at(&self.cfg.min) == Ordering::Greater || p.sign_at(&self.cfg.max) == Ordering::Less {
            return Ok(());
        }
        let cert = classify_with_digits(&p, self.cfg.digits)?;
        if cert.label != Label::Salem {
            return Ok(());
        }
        let root = cert
            .distinguished_root
            .ok_or_else(|| Error::Precision(format!("no root enclosure for {p}")))?;
        // family members are recognised by their pattern: the first half is
        // itself a Pisot or Salem polynomial
        let mut family = None;
        if let Some((q, sym)) = half {
            let label = classify_with_digits(q, self.cfg.digits)?.label;
            if matches!(label, Label::Pisot | Label::Salem) {
                out.family_hits.push(FamilyHit {
                    prefix: q.clone(),
                    eps: sym,
                    label,
                });
                family = Some(FamilyRef {
                    pisot: q.clone(),
                    eps: sym,
                    n: (p.deg() - q.deg()) as u64,
                });
            }
        }
        let code = if self.cfg.length == 6 {
            SporadicCode::encode(&p)
        } else {
            None
        };
        out.hits.push(SalemHit {
            minpoly: salem_minpoly(&p)?,
            factorization: strip_cyclotomic(&p)?,
            poly: p,
            root,
            code,
            family,
            flags: String::new(),
            digits: self.cfg.digits,
        });
        Ok(())
    }
}

/// Run the search described by `cfg`.
pub fn enumerate(cfg: &SearchConfig) -> Result<SearchReport> {
    cfg.validate()?;
    match cfg.jobs {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Domain(e.to_string()))?;
            pool.install(|| run(cfg))
        }
        None => run(cfg),
    }
}

fn run(cfg: &SearchConfig) -> Result<SearchReport> {
    let engine = Engine {
        cfg,
        half: cfg.length / 2,
        odd: cfg.length % 2 == 1,
    };
    let root = Node {
        q: IntPoly::one(),
        used: 1,
    };
    let mut total = Partial::default();
    let mut tasks = Vec::new();
    engine.explore(root, &mut total, Some(&mut tasks))?;
    let parts = tasks
        .into_par_iter()
        .map(|node| {
            let mut part = Partial::default();
            engine.explore(node, &mut part, None).map(|_| part)
        })
        .collect::<Result<Vec<_>>>()?;
    for part in parts {
        total.merge(part);
    }

    let mut unique: BTreeMap<IntPoly, SalemHit> = BTreeMap::new();
    for hit in total.hits {
        unique.entry(hit.poly.clone()).or_insert(hit);
    }
    let mut hits: Vec<SalemHit> = unique.into_values().collect();
    hits.sort_by(|x, y| x.sort_key().cmp(&y.sort_key()));
    if cfg.flags {
        annotate(&mut hits, cfg.length)?;
    }
    let (family_members, sporadic): (Vec<_>, Vec<_>) = hits.into_iter().partition(|h| h.family.is_some());

    let mut family_hits = total.family_hits;
    family_hits.sort();
    family_hits.dedup();
    let mut obstructions = total.obstructions;
    obstructions.sort();
    obstructions.dedup();
    let mut truncated_bounds = total.truncated;
    truncated_bounds.sort();
    let exhaustive = obstructions.is_empty() && truncated_bounds.is_empty();
    Ok(SearchReport {
        config: cfg.clone(),
        sporadic,
        family_members,
        family_hits,
        obstructions,
        truncated_bounds,
        candidates: total.candidates,
        exhaustive,
    })
}

/// Fill in the `f` and `5` flags, once per distinct minimal polynomial.
fn annotate(hits: &mut [SalemHit], length: usize) -> Result<()> {
    let mut distinct: Vec<(IntPoly, Enclosure)> = Vec::new();
    for h in hits.iter() {
        if !distinct.iter().any(|(m, _)| *m == h.minpoly) {
            distinct.push((h.minpoly.clone(), h.root.clone()));
        }
    }
    let flags = distinct
        .par_iter()
        .map(|(m, _)| salem_flags(m, length == 5))
        .collect::<Result<Vec<_>>>()?;
    for h in hits.iter_mut() {
        let i = distinct.iter().position(|(m, _)| *m == h.minpoly).expect("present");
        h.flags = flags[i].clone();
    }
    Ok(())
}

/// `f` if the Salem number of `m` lies in an inventory family, `5` if it
/// has shortness 5 (known when `length_five` is set).
pub fn salem_flags(m: &IntPoly, length_five: bool) -> Result<String> {
    let tau = root_above_one(m, 30)?;
    let mut flags = String::new();
    if in_inventory_family(m, &tau)? {
        flags.push('f');
    }
    let five = length_five || !shortness::short_polynomials(m, &tau, 5)?.0.is_empty();
    if five {
        flags.push('5');
    }
    Ok(flags)
}

/// Salem polynomials of length `len` in the report representing `m`.
pub fn representatives(report: &SearchReport, m: &IntPoly) -> Result<Vec<IntPoly>> {
    let mut out = Vec::new();
    for hit in report.all_salem() {
        if hit.minpoly == *m && quotient_is_cyclotomic(&hit.poly, m)? {
            out.push(hit.poly.clone());
        }
    }
    out.sort_by(|x, y| x.deg().cmp(&y.deg()).then(x.cmp(y)));
    Ok(out)
}
