//! Floating-point oracles shared by the integration tests.
#![allow(dead_code)]

use num_complex::Complex64;
use num_traits::Zero;
use salem::IntPoly;

/// Roots of a squarefree polynomial by Durand-Kerner iteration.
pub fn durand_kerner(p: &IntPoly) -> Vec<Complex64> {
    let c = p.to_f64s();
    let n = p.deg();
    let lead = c[n];
    let eval = |z: Complex64| c.iter().rev().fold(Complex64::zero(), |acc, &a| acc * z + a / lead);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..5000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= roots[i] - roots[j];
                }
            }
            let step = eval(roots[i]) / den;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    roots
}

/// Moduli of all roots of `p` with multiplicity. Repeated factors are split
/// off first so the iteration only sees simple roots.
pub fn root_moduli(p: &IntPoly) -> Vec<f64> {
    let mut out = Vec::new();
    for (f, k) in p.squarefree_decomposition() {
        if f.deg() == 0 {
            continue;
        }
        for z in durand_kerner(&f) {
            out.extend(std::iter::repeat_n(z.norm(), k));
        }
    }
    out
}

/// `(inside, on, outside)` with `tol` as the band around the unit circle.
pub fn numeric_counts(p: &IntPoly, tol: f64) -> (usize, usize, usize) {
    let m = root_moduli(p);
    let inside = m.iter().filter(|r| **r < 1.0 - tol).count();
    let outside = m.iter().filter(|r| **r > 1.0 + tol).count();
    (inside, m.len() - inside - outside, outside)
}

/// All monic reciprocal polynomials of degree `2..=max_deg` and length at
/// most `max_len`.
pub fn small_reciprocal_polys(max_deg: usize, max_len: i64) -> Vec<IntPoly> {
    let mut out = Vec::new();
    for deg in 2..=max_deg {
        let half = deg / 2;
        let mut c = vec![0i64; deg + 1];
        c[0] = 1;
        c[deg] = 1;
        let range = max_len - 2;
        let combos = (2 * range + 1).pow(half as u32);
        for idx in 0..combos {
            let mut r = idx;
            for i in 1..=half {
                let v = r % (2 * range + 1) - range;
                r /= 2 * range + 1;
                c[i] = v;
                c[deg - i] = v;
            }
            let len: i64 = c.iter().map(|a| a.abs()).sum();
            if len <= max_len {
                out.push(IntPoly::from_i64s(&c));
            }
        }
    }
    out
}
