//! Brute force over coefficient patterns as an independent check of the
//! pruned search.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;

use salem::polyring::parse_rational;
use salem::search::{enumerate, SearchConfig};
use salem::unitcircle::{classify, Label};
use salem::{IntPoly, Rational};

/// Monic (anti)reciprocal polynomials of degree `deg` and length `len`.
/// Every Salem polynomial has this shape.
fn patterns(deg: usize, len: i64, out: &mut Vec<IntPoly>) {
    fn fill(c: &mut Vec<i64>, pos: usize, left: i64, sym: i64, out: &mut Vec<IntPoly>) {
        let deg = c.len() - 1;
        if 2 * pos > deg {
            if left == 0 {
                out.push(IntPoly::from_i64s(c));
            }
            return;
        }
        let centre = 2 * pos == deg;
        let unit = if centre { 1 } else { 2 };
        fill(c, pos + 1, left, sym, out);
        if centre && sym < 0 {
            return;
        }
        for v in 1..=left / unit {
            for s in [v, -v] {
                c[pos] = s;
                c[deg - pos] = sym * s;
                fill(c, pos + 1, left - unit * v, sym, out);
            }
        }
        c[pos] = 0;
        c[deg - pos] = 0;
    }
    for sym in [1, -1] {
        let mut c = vec![0i64; deg + 1];
        c[deg] = 1;
        c[0] = sym;
        fill(&mut c, 1, len - 2, sym, out);
    }
}


fn sign_at(p: &IntPoly, num: i64, den: i64) -> Ordering {
    p.sign_at(&Rational::new(BigInt::from(num), BigInt::from(den)))
}

/// Salem polynomials among all patterns with Salem number in `[lo, hi]`.
/// A Salem polynomial has a single real zero above 1, so it is nonpositive
/// at `lo` and positive at `hi`; only those patterns are classified.
fn brute_force(len: i64, max_deg: usize, lo: (i64, i64), hi: (i64, i64)) -> BTreeSet<IntPoly> {
    let mut found = BTreeSet::new();
    for deg in 2..=max_deg {
        let mut all = Vec::new();
        patterns(deg, len, &mut all);
        for p in all {
            if sign_at(&p, lo.0, lo.1) == Ordering::Greater || sign_at(&p, hi.0, hi.1) != Ordering::Greater {
                continue;
            }
            if classify(&p).unwrap().label == Label::Salem {
                found.insert(p);
            }
        }
    }
    found
}

#[test]
fn length_five_search_is_complete_to_degree_28() {
    let cfg = SearchConfig::new(5, parse_rational("1.17").unwrap(), parse_rational("3.2").unwrap()).unwrap();
    let report = enumerate(&cfg).unwrap();
    assert!(report.exhaustive);
    let searched: BTreeSet<IntPoly> = report
        .sporadic
        .iter()
        .chain(&report.family_members)
        .map(|h| h.poly.clone())
        .filter(|p| p.deg() <= 28)
        .collect();
    let brute = brute_force(5, 28, (117, 100), (32, 10));
    assert_eq!(searched, brute);
    assert!(!brute.is_empty());
}

#[test]
fn no_salem_polynomial_has_length_four() {
    // With three units of length to spare, every zero has modulus below 3.
    assert!(brute_force(4, 60, (1, 1), (3, 1)).is_empty());
}
