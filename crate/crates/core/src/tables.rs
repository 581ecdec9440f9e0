//! Vendored golden tables and their row-by-row verification.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cyclofactor::{salem_minpoly, strip_cyclotomic};
use crate::error::{Error, Result};
use crate::families::Family;
use crate::polyring::{parse_rational, IntPoly, Sign};
use crate::search::shortness::short_polynomials;
use crate::search::{enumerate, salem_flags, SearchConfig, SporadicCode};
use crate::unitcircle::{classify, root_above_one, Label};

pub const TABLE1_CSV: &str = include_str!("../data/table1.csv");
pub const SALEM6_CSV: &str = include_str!("../data/salem6.csv");
pub const FAMILIES_CSV: &str = include_str!("../data/families.csv");
pub const ALL_SALEM_CSV: &str = include_str!("../data/all_salem.csv");

/// Interval of the length-5 census.
pub const TABLE1_INTERVAL: (&str, &str) = ("1.17", "3.2");
/// Interval of the length-6 census; the upper end is just above `sqrt(10)`.
pub const SALEM6_INTERVAL: (&str, &str) = ("1.17", "3.1623");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TableId {
    Table1,
    Salem6,
    Families,
    AllSalem,
}

impl TableId {
    pub const ALL: [TableId; 4] = [TableId::Table1, TableId::Salem6, TableId::Families, TableId::AllSalem];

    pub fn name(self) -> &'static str {
        match self {
            TableId::Table1 => "table1",
            TableId::Salem6 => "salem6",
            TableId::Families => "families",
            TableId::AllSalem => "all-salem",
        }
    }

    pub fn data(self) -> &'static str {
        match self {
            TableId::Table1 => TABLE1_CSV,
            TableId::Salem6 => SALEM6_CSV,
            TableId::Families => FAMILIES_CSV,
            TableId::AllSalem => ALL_SALEM_CSV,
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<TableId> {
        TableId::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown table {s:?}")))
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct Table1Row {
    pub polynomial: String,
    pub salem_number: String,
    pub factorization: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Salem6Row {
    pub salem_number: String,
    pub flags: String,
    pub code: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct FamilyRow {
    pub pisot: String,
    pub eps: i64,
    pub n0: u64,
    pub schedule: String,
}

impl FamilyRow {
    /// Pairs `(a, d)` from `a:d` tokens.
    pub fn schedule_pairs(&self) -> Result<Vec<(u64, u64)>> {
        self.schedule
            .split_whitespace()
            .map(|tok| {
                let (a, d) = tok
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("bad schedule entry {tok:?}")))?;
                let num = |t: &str| t.parse::<u64>().map_err(|_| Error::Parse(format!("bad number {t:?}")));
                Ok((num(a)?, num(d)?))
            })
            .collect()
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct AllSalemRow {
    pub label: String,
    pub salem_number: String,
    pub degree: usize,
    pub shortness: usize,
    pub polynomial: String,
}

/// Rows of a vendored table; lines starting with `#` are comments.
pub fn parse_rows<T: for<'de> Deserialize<'de>>(data: &str) -> Result<Vec<T>> {
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(data.as_bytes())
        .deserialize()
        .map(|r| r.map_err(|e| Error::Data(e.to_string())))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowCheck {
    pub key: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableReport {
    pub table: TableId,
    pub rows: Vec<RowCheck>,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RowCheck> {
        self.rows.iter().filter(|r| !r.ok)
    }
}

impl fmt::Display for TableReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{} {}: {}", if r.ok { "ok  " } else { "FAIL" }, r.key, r.detail)?;
        }
        let failed = self.failures().count();
        writeln!(f, "{}: {} rows, {} failed", self.table, self.rows.len(), failed)
    }
}

/// Accumulates the findings for one row.
struct Row {
    key: String,
    problems: Vec<String>,
    notes: Vec<String>,
}

impl Row {
    fn new(key: impl Into<String>) -> Row {
        Row {
            key: key.into(),
            problems: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn expect<T: PartialEq + fmt::Display>(&mut self, what: &str, found: T, expected: T) {
        if found != expected {
            self.problems.push(format!("{what} is {found}, expected {expected}"));
        }
    }

    fn check(&mut self, ok: bool, problem: impl FnOnce() -> String) {
        if !ok {
            self.problems.push(problem());
        }
    }

    /// Runs `f`, turning an error into a problem for this row.
    fn attempt(&mut self, f: impl FnOnce(&mut Row) -> Result<()>) {
        if let Err(e) = f(self) {
            self.problems.push(e.to_string());
        }
    }

    fn finish(self) -> RowCheck {
        let ok = self.problems.is_empty();
        let detail = if ok {
            if self.notes.is_empty() {
                "verified".to_string()
            } else {
                self.notes.join("; ")
            }
        } else {
            self.problems.join("; ")
        };
        RowCheck {
            key: self.key,
            ok,
            detail,
        }
    }
}

/// Salem label, Salem number and length of a polynomial.
fn check_salem(row: &mut Row, p: &IntPoly, number: &str, length: usize) -> Result<()> {
    let cert = classify(p)?;
    row.expect("label", cert.label, Label::Salem);
    row.expect("length", p.length().to_string(), length.to_string());
    let root = cert.root_decimal().unwrap_or_default();
    row.expect("Salem number", root.as_str(), number);
    Ok(())
}

pub fn verify_table(id: TableId) -> Result<TableReport> {
    verify_table_data(id, id.data())
}

/// Verify `data` as a table of kind `id`. Only unreadable data is an
/// error; every mismatch becomes a failed row.
pub fn verify_table_data(id: TableId, data: &str) -> Result<TableReport> {
    let rows = match id {
        TableId::Table1 => verify_table1(&parse_rows(data)?),
        TableId::Salem6 => verify_salem6(&parse_rows(data)?),
        TableId::Families => verify_families(&parse_rows(data)?),
        TableId::AllSalem => verify_all_salem(&parse_rows(data)?),
    };
    Ok(TableReport { table: id, rows })
}

fn census_check(key: &str, len: usize, interval: (&str, &str), expected: BTreeSet<IntPoly>) -> RowCheck {
    let mut row = Row::new(key);
    row.attempt(|row| {
        let cfg = SearchConfig::new(len, parse_rational(interval.0)?, parse_rational(interval.1)?)?;
        let report = enumerate(&cfg)?;
        let found: BTreeSet<IntPoly> = report.sporadic.iter().map(|h| h.poly.clone()).collect();
        row.check(report.exhaustive, || "search incomplete".into());
        let missing = expected.difference(&found).count();
        let extra = found.difference(&expected).count();
        row.check(missing == 0 && extra == 0, || {
            format!("{missing} rows not found by the search, {extra} found polynomials not in the table")
        });
        row.notes.push(format!(
            "length-{len} search on [{}, {}] finds exactly the {} rows",
            interval.0,
            interval.1,
            expected.len()
        ));
        Ok(())
    });
    row.finish()
}

fn verify_table1(rows: &[Table1Row]) -> Vec<RowCheck> {
    let mut out = Vec::new();
    let mut polys = BTreeSet::new();
    for r in rows {
        let mut row = Row::new(&r.polynomial);
        row.attempt(|row| {
            let p: IntPoly = r.polynomial.parse()?;
            polys.insert(p.clone());
            check_salem(row, &p, &r.salem_number, 5)?;
            let f = strip_cyclotomic(&p)?;
            row.expect("factorization", f.to_string().as_str(), r.factorization.as_str());
            row.expect("gcd minimal polynomial", salem_minpoly(&p)?, f.remainder);
            Ok(())
        });
        out.push(row.finish());
    }
    out.push(census_check("census", 5, TABLE1_INTERVAL, polys));
    out
}

fn verify_salem6(rows: &[Salem6Row]) -> Vec<RowCheck> {
    let mut out = Vec::new();
    let mut polys = BTreeSet::new();
    let mut groups: BTreeMap<String, (String, Vec<IntPoly>)> = BTreeMap::new();
    for r in rows {
        let mut row = Row::new(format!("[{}]", r.code));
        row.attempt(|row| {
            let code: SporadicCode = r.code.parse()?;
            let p = code.decode();
            polys.insert(p.clone());
            check_salem(row, &p, &r.salem_number, 6)?;
            let m = salem_minpoly(&p)?;
            row.expect("gcd minimal polynomial", &m, &strip_cyclotomic(&p)?.remainder);
            let entry = groups
                .entry(r.salem_number.clone())
                .or_insert_with(|| (r.flags.clone(), Vec::new()));
            row.check(entry.0 == r.flags, || "flags differ within the group".into());
            entry.1.push(m);
            Ok(())
        });
        out.push(row.finish());
    }
    for (number, (flags, minpolys)) in &groups {
        let mut row = Row::new(format!("group {number}"));
        row.attempt(|row| {
            let m = &minpolys[0];
            row.check(minpolys.iter().all(|x| x == m), || "minimal polynomials differ".into());
            let derived = salem_flags(m, false)?;
            row.expect("flags", derived.as_str(), flags.as_str());
            row.notes.push(format!("{} codes share {m}; flags {derived:?}", minpolys.len()));
            Ok(())
        });
        out.push(row.finish());
    }
    out.push(census_check("census", 6, SALEM6_INTERVAL, polys));
    out
}

fn verify_families(rows: &[FamilyRow]) -> Vec<RowCheck> {
    rows.iter()
        .map(|r| {
            let mut row = Row::new(format!("{} {:+}", r.pisot, r.eps));
            row.attempt(|row| {
                let p: IntPoly = r.pisot.parse()?;
                let fam = Family::new(&p, Sign::from_i64(r.eps)?)?;
                row.expect("n0", fam.find_n0(fam.default_n0_limit())?, r.n0);
                let mut expected = r.schedule_pairs()?;
                expected.sort_by_key(|&(a, d)| (d, a));
                let found = fam.cyclotomic_schedule()?;
                row.check(found == expected, || format!("schedule is {found:?}, expected {expected:?}"));
                Ok(())
            });
            row.finish()
        })
        .collect()
}

fn verify_all_salem(rows: &[AllSalemRow]) -> Vec<RowCheck> {
    rows.iter()
        .map(|r| {
            let mut row = Row::new(&r.label);
            row.attempt(|row| {
                let p: IntPoly = r.polynomial.parse()?;
                check_salem(row, &p, &r.salem_number, r.shortness)?;
                let m = salem_minpoly(&p)?;
                row.expect("degree", m.deg(), r.degree);
                let tau = root_above_one(&m, 30)?;
                let (five, complete) = short_polynomials(&m, &tau, 5)?;
                row.check(complete, || "length-5 search incomplete".into());
                if r.shortness == 5 {
                    row.check(five.contains(&p), || "not found by the length-5 search".into());
                    row.check(five.iter().all(|s| s.deg() >= p.deg()), || "a lower-degree short polynomial exists".into());
                    return Ok(());
                }
                row.check(five.is_empty(), || format!("length-5 polynomial {} exists", five[0]));
                if r.shortness == 6 {
                    let (six, complete) = short_polynomials(&m, &tau, 6)?;
                    row.check(complete, || "length-6 search incomplete".into());
                    row.check(six.contains(&p), || "not found by the length-6 search".into());
                    row.check(six.iter().all(|s| s.deg() >= p.deg()), || "a lower-degree short polynomial exists".into());
                } else {
                    let (six, _) = short_polynomials(&m, &tau, 6)?;
                    row.check(six.is_empty(), || format!("length-6 polynomial {} exists", six[0]));
                    row.notes.push(format!(
                        "shortness at least 7 by search, at most {} by the listed polynomial",
                        r.shortness
                    ));
                }
                Ok(())
            });
            row.finish()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_ids() {
        for id in TableId::ALL {
            assert_eq!(id.name().parse::<TableId>().unwrap(), id);
        }
        assert!("table2".parse::<TableId>().is_err());
    }

    #[test]
    fn vendored_rows_parse() {
        assert_eq!(parse_rows::<Table1Row>(TABLE1_CSV).unwrap().len(), 17);
        assert_eq!(parse_rows::<Salem6Row>(SALEM6_CSV).unwrap().len(), 126);
        assert_eq!(parse_rows::<FamilyRow>(FAMILIES_CSV).unwrap().len(), 10);
        assert_eq!(parse_rows::<AllSalemRow>(ALL_SALEM_CSV).unwrap().len(), 63);
    }

    #[test]
    fn mismatches_become_failed_rows() {
        let data = "polynomial,salem_number,factorization\nz^4-z^3-z^2-z+1,1.722083807,z^4-z^3-z^2-z+1\nz^3-z-1,1.324717957,z^3-z-1\n";
        let report = verify_table_data(TableId::Table1, data).unwrap();
        assert!(!report.passed());
        assert!(report.rows[0].detail.contains("Salem number"));
        assert!(report.rows[1].detail.contains("label"));
    }
}
