//! Minkowski's question-mark function `?: Q ∩ [0,1] → Z[1/2] ∩ [0,1]` and its inverse.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, in_unit_interval, is_dyadic, Q};

/// Partial quotients `[a0; a1, ..., an]` of a nonnegative rational.
pub fn continued_fraction(x: &Q) -> Vec<BigInt> {
    let (mut n, mut d) = (x.numer().clone(), x.denom().clone());
    let mut out = Vec::new();
    while !d.is_zero() {
        let (a, r) = n.div_mod_floor(&d);
        out.push(a);
        n = d;
        d = r;
    }
    out
}

/// `?([0; a1, a2, ...]) = 2 Σ (-1)^(k+1) 2^-(a1 + ... + ak)`.
pub fn forward(x: &Q) -> Result<Q> {
    if !in_unit_interval(x) {
        return Err(Error::OutOfRange(fmt_q(x)));
    }
    if x.is_one() {
        return Ok(Q::one());
    }
    let cf = continued_fraction(x);
    let mut total = Q::zero();
    let mut exp = BigInt::zero();
    for (k, a) in cf.iter().skip(1).enumerate() {
        exp += a;
        let e: u32 = (&exp).try_into().map_err(|_| Error::OutOfRange(fmt_q(x)))?;
        let term = Q::new(BigInt::from(2), BigInt::one() << e);
        if k % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

/// Walks the Stern–Brocot tree: at each node the mediant corresponds to the midpoint
/// of the current dyadic interval.
pub fn inverse(y: &Q) -> Result<Q> {
    if !in_unit_interval(y) {
        return Err(Error::OutOfRange(fmt_q(y)));
    }
    if !is_dyadic(y) {
        return Err(Error::NonDyadicInput(fmt_q(y)));
    }
    let (mut ln, mut ld) = (BigInt::zero(), BigInt::one());
    let (mut hn, mut hd) = (BigInt::one(), BigInt::one());
    let (mut lo, mut hi) = (Q::zero(), Q::one());
    if *y == lo {
        return Ok(lo);
    }
    if *y == hi {
        return Ok(hi);
    }
    loop {
        let mid = (&lo + &hi) / Q::from_integer(BigInt::from(2));
        let (mn, md) = (&ln + &hn, &ld + &hd);
        match y.cmp(&mid) {
            std::cmp::Ordering::Equal => return Ok(Q::new(mn, md)),
            std::cmp::Ordering::Less => {
                hi = mid;
                hn = mn;
                hd = md;
            }
            std::cmp::Ordering::Greater => {
                lo = mid;
                ln = mn;
                ld = md;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    #[test]
    fn examples() {
        assert_eq!(forward(&qi(0)).unwrap(), qi(0));
        assert_eq!(forward(&qi(1)).unwrap(), qi(1));
        assert_eq!(forward(&q(1, 2)).unwrap(), q(1, 2));
        assert_eq!(forward(&q(1, 3)).unwrap(), q(1, 4));
        assert_eq!(forward(&q(2, 3)).unwrap(), q(3, 4));
        assert_eq!(forward(&q(2, 5)).unwrap(), q(3, 8));
        assert_eq!(inverse(&q(1, 4)).unwrap(), q(1, 3));
        assert_eq!(inverse(&q(5, 8)).unwrap(), q(3, 5));
    }

    #[test]
    fn errors() {
        assert_eq!(forward(&q(3, 2)), Err(Error::OutOfRange("3/2".into())));
        assert_eq!(inverse(&q(1, 3)), Err(Error::NonDyadicInput("1/3".into())));
        assert_eq!(inverse(&q(-1, 2)), Err(Error::OutOfRange("-1/2".into())));
    }

    #[test]
    fn continued_fraction_of_seven_tenths() {
        let cf: Vec<i64> = continued_fraction(&q(7, 10)).iter().map(|b| b.try_into().unwrap()).collect();
        assert_eq!(cf, vec![0, 1, 2, 3]);
    }
}
