//! Countable dense orders inside `[0,1]` and the back-and-forth construction.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{in_unit_interval, is_dyadic, mediant, midpoint, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DenseKind {
    /// `Z[1/2]`, enumerated level by level with midpoints as density witnesses.
    Dyadic,
    /// `Q`, enumerated along the Stern–Brocot tree with mediants as density witnesses.
    Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DenseHandle {
    pub kind: DenseKind,
    pub lower_closed: bool,
    pub upper_closed: bool,
}

impl fmt::Display for DenseHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            DenseKind::Dyadic => "Z[1/2]",
            DenseKind::Rational => "Q",
        };
        let l = if self.lower_closed { '[' } else { '(' };
        let u = if self.upper_closed { ']' } else { ')' };
        write!(f, "{name}∩{l}0,1{u}")
    }
}

impl DenseHandle {
    pub fn closed(kind: DenseKind) -> Self {
        DenseHandle { kind, lower_closed: true, upper_closed: true }
    }

    pub fn open(kind: DenseKind) -> Self {
        DenseHandle { kind, lower_closed: false, upper_closed: false }
    }

    pub fn contains(&self, x: &Q) -> bool {
        in_unit_interval(x)
            && (self.kind == DenseKind::Rational || is_dyadic(x))
            && (self.lower_closed || !x.is_zero())
            && (self.upper_closed || !x.is_one())
    }

    /// An element strictly between the bounds; missing bounds stand for 0 and 1.
    pub fn witness(&self, lo: Option<&Q>, hi: Option<&Q>) -> Q {
        let zero = Q::zero();
        let one = Q::one();
        let lo = lo.unwrap_or(&zero);
        let hi = hi.unwrap_or(&one);
        match self.kind {
            DenseKind::Dyadic => midpoint(lo, hi),
            DenseKind::Rational => mediant(lo, hi),
        }
    }

    pub fn enumerate(&self) -> Enumeration {
        let mut pending: Vec<Q> = Vec::new();
        if self.lower_closed {
            pending.push(Q::zero());
        }
        if self.upper_closed {
            pending.push(Q::one());
        }
        pending.reverse();
        Enumeration { handle: *self, level: vec![Q::zero(), Q::one()], pending }
    }
}

/// Endpoints first, then each tree level from left to right.
pub struct Enumeration {
    handle: DenseHandle,
    level: Vec<Q>,
    pending: Vec<Q>,
}

impl Iterator for Enumeration {
    type Item = Q;

    fn next(&mut self) -> Option<Q> {
        if self.pending.is_empty() {
            let mut next = Vec::with_capacity(self.level.len() * 2);
            let mut fresh = Vec::new();
            for w in self.level.windows(2) {
                next.push(w[0].clone());
                let m = self.handle.witness(Some(&w[0]), Some(&w[1]));
                fresh.push(m.clone());
                next.push(m);
            }
            next.push(Q::one());
            self.level = next;
            fresh.reverse();
            self.pending = fresh;
        }
        self.pending.pop()
    }
}

/// A finite order-preserving injection.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartialIso {
    pub map: BTreeMap<Q, Q>,
}

impl PartialIso {
    pub fn pairs(&self) -> Vec<(Q, Q)> {
        self.map.iter().map(|(a, b)| (a.clone(), b.clone())).collect()
    }

    pub fn is_consistent(&self) -> bool {
        let images: Vec<&Q> = self.map.values().collect();
        images.windows(2).all(|w| w[0] < w[1])
    }

    fn inverse(&self) -> BTreeMap<Q, Q> {
        self.map.iter().map(|(a, b)| (b.clone(), a.clone())).collect()
    }
}

fn neighbours<'a>(m: &'a BTreeMap<Q, Q>, x: &Q) -> (Option<&'a Q>, Option<&'a Q>) {
    let lo = m.range(..x.clone()).next_back().map(|(_, v)| v);
    let hi = m.range(x.clone()..).next().map(|(_, v)| v);
    (lo, hi)
}

/// Alternates forth and back extensions `steps` times after matching closed endpoints.
pub fn back_and_forth(a: &DenseHandle, b: &DenseHandle, steps: usize) -> Result<PartialIso> {
    if (a.lower_closed, a.upper_closed) != (b.lower_closed, b.upper_closed) {
        return Err(Error::EndpointMismatch(a.to_string(), b.to_string()));
    }
    let mut iso = PartialIso::default();
    if a.lower_closed {
        iso.map.insert(Q::zero(), Q::zero());
    }
    if a.upper_closed {
        iso.map.insert(Q::one(), Q::one());
    }
    let mut ea = a.enumerate();
    let mut eb = b.enumerate();
    for _ in 0..steps {
        let x = ea.by_ref().find(|x| !iso.map.contains_key(x)).expect("infinite enumeration");
        let (lo, hi) = neighbours(&iso.map, &x);
        let y = b.witness(lo, hi);
        iso.map.insert(x, y);

        let inv = iso.inverse();
        let y = eb.by_ref().find(|y| !inv.contains_key(y)).expect("infinite enumeration");
        let (lo, hi) = neighbours(&inv, &y);
        let x = a.witness(lo, hi);
        iso.map.insert(x, y);
    }
    Ok(iso)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    #[test]
    fn enumeration_orders() {
        let d: Vec<Q> = DenseHandle::closed(DenseKind::Dyadic).enumerate().take(5).collect();
        assert_eq!(d, vec![qi(0), qi(1), q(1, 2), q(1, 4), q(3, 4)]);
        let r: Vec<Q> = DenseHandle::closed(DenseKind::Rational).enumerate().take(9).collect();
        assert_eq!(r, vec![qi(0), qi(1), q(1, 2), q(1, 3), q(2, 3), q(1, 4), q(2, 5), q(3, 5), q(3, 4)]);
    }

    #[test]
    fn endpoints_forced() {
        let iso = back_and_forth(
            &DenseHandle::closed(DenseKind::Dyadic),
            &DenseHandle::closed(DenseKind::Rational),
            4,
        )
        .unwrap();
        assert_eq!(iso.map.get(&qi(0)), Some(&qi(0)));
        assert_eq!(iso.map.get(&qi(1)), Some(&qi(1)));
        assert!(iso.is_consistent());
    }

    #[test]
    fn endpoint_mismatch() {
        let r = back_and_forth(
            &DenseHandle::open(DenseKind::Rational),
            &DenseHandle::closed(DenseKind::Rational),
            1,
        );
        assert!(matches!(r, Err(Error::EndpointMismatch(..))));
    }
}
