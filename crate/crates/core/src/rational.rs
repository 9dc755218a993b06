//! Exact rationals. Every rational in the crate is a `BigRational` in lowest terms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Parses `p/q` or `p`. Whitespace around the parts is ignored.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// `p/q` in lowest terms with `q > 0`; integers print without a denominator.
pub fn fmt_q(x: &Q) -> String {
    x.to_string()
}

pub fn in_unit_interval(x: &Q) -> bool {
    !x.is_negative() && *x <= Q::one()
}

pub fn midpoint(a: &Q, b: &Q) -> Q {
    (a + b) / qi(2)
}

pub fn mediant(a: &Q, b: &Q) -> Q {
    Q::new(a.numer() + b.numer(), a.denom() + b.denom())
}

/// All rationals in `[0,1]` with denominator at most `max_den`, sorted.
pub fn farey(max_den: i64) -> Vec<Q> {
    let mut out: Vec<Q> = Vec::new();
    for d in 1..=max_den {
        for n in 0..=d {
            out.push(q(n, d));
        }
    }
    out.sort();
    out.dedup();
    out
}

pub fn is_dyadic(x: &Q) -> bool {
    let d = x.denom();
    (d & (d - BigInt::one())).is_zero()
}
