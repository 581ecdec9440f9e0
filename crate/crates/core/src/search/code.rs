//! The `[n, k, d, eps]` encoding of length-6 Salem polynomials.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::polyring::{IntPoly, Sign};

/// `[n, k, d, eps]` stands for `z^n (z^k - z^(k-d) - 1) + eps (z^k + z^d - 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SporadicCode {
    pub n: u64,
    pub k: u64,
    pub d: u64,
    pub eps: Sign,
}

impl SporadicCode {
    pub fn new(n: u64, k: u64, d: u64, eps: Sign) -> Result<SporadicCode> {
        if n == 0 || k == 0 || d == 0 || d > k {
            return domain(format!("invalid code [{n},{k},{d},{eps}]"));
        }
        Ok(SporadicCode { n, k, d, eps })
    }

    pub fn decode(&self) -> IntPoly {
        let (n, k, d) = (self.n as usize, self.k as usize, self.d as usize);
        let e = BigInt::from(self.eps.value());
        let mut c = vec![BigInt::zero(); n + k + 1];
        c[n + k] += 1;
        c[n + k - d] -= 1;
        c[n] -= 1;
        c[k] += &e;
        c[d] += &e;
        c[0] -= &e;
        IntPoly::new(c)
    }

    /// Written `n k d eps`, as in the vendored tables.
    pub fn spaced(&self) -> String {
        format!("{} {} {} {}", self.n, self.k, self.d, self.eps.value())
    }

    /// The code of `p`, if it has one. Codes are tried in increasing order of
    /// `(k, d, eps)`, so the result is unique.
    pub fn encode(p: &IntPoly) -> Option<SporadicCode> {
        if !p.leading().is_some_and(|c| c.is_one()) {
            return None;
        }
        let total = p.deg() as u64;
        for k in 1..total {
            for d in 1..=k {
                for eps in [Sign::Plus, Sign::Minus] {
                    let code = SporadicCode { n: total - k, k, d, eps };
                    if code.decode() == *p {
                        return Some(code);
                    }
                }
            }
        }
        None
    }
}

/// Written `n,k,d,eps` with a signed `eps`, e.g. `3,2,2,-1`.
impl fmt::Display for SporadicCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.n, self.k, self.d, self.eps.value())
    }
}

/// Accepts `n,k,d,eps`, optionally bracketed, with commas or whitespace.
impl FromStr for SporadicCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<SporadicCode> {
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        let parts: Vec<&str> = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .collect();
        let [n, k, d, e] = parts[..] else {
            return Err(Error::Parse(format!("expected four fields in code {s:?}")));
        };
        let num = |t: &str| {
            t.parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad code field {t:?}")))
        };
        let eps = e
            .trim_start_matches('+')
            .parse::<i64>()
            .map_err(|_| Error::Parse(format!("bad sign {e:?}")))
            .and_then(Sign::from_i64)?;
        SporadicCode::new(num(n)?, num(k)?, num(d)?, eps)
    }
}
