//! Two copies of `Q ∩ [0,1]` glued at both endpoints, with the idealoid of
//! non-identity morphisms, and its arrow idealoid.
//!
//! Points are `0`, `1`, `p` (left copy) and `p'` (right copy) for `0 < p < 1`.
//! A chain that is not just an endpoint lies in one of two lines, each a copy of
//! `[0,1]` through both endpoints.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::idealoid::{bisect, Chain, Idealoid};
use crate::order::FinitePoset;
use crate::rational::{fmt_q, midpoint, parse_q, q, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GluedPoint {
    Zero,
    One,
    Left(Q),
    Right(Q),
}

impl fmt::Display for GluedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GluedPoint::Zero => write!(f, "0"),
            GluedPoint::One => write!(f, "1"),
            GluedPoint::Left(p) => write!(f, "{}", fmt_q(p)),
            GluedPoint::Right(p) => write!(f, "{}'", fmt_q(p)),
        }
    }
}

impl GluedPoint {
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (body, right) = match s.strip_suffix('\'') {
            Some(b) => (b, true),
            None => (s, false),
        };
        Self::on(if right { Side::Right } else { Side::Left }, parse_q(body)?)
    }

    /// The point with coordinate `x` on the given line.
    pub fn on(side: Side, x: Q) -> Result<Self> {
        if x.is_zero() {
            Ok(GluedPoint::Zero)
        } else if x.is_one() {
            Ok(GluedPoint::One)
        } else if x > Q::zero() && x < Q::one() {
            Ok(match side {
                Side::Left => GluedPoint::Left(x),
                Side::Right => GluedPoint::Right(x),
            })
        } else {
            Err(Error::OutOfRange(fmt_q(&x)))
        }
    }

    pub fn coordinate(&self) -> Q {
        match self {
            GluedPoint::Zero => Q::zero(),
            GluedPoint::One => Q::one(),
            GluedPoint::Left(p) | GluedPoint::Right(p) => p.clone(),
        }
    }

    pub fn on_line(&self, side: Side) -> bool {
        !matches!(
            (self, side),
            (GluedPoint::Left(_), Side::Right) | (GluedPoint::Right(_), Side::Left)
        )
    }

    pub fn le(&self, other: &GluedPoint) -> bool {
        match (self, other) {
            (GluedPoint::Zero, _) | (_, GluedPoint::One) => true,
            (GluedPoint::Left(a), GluedPoint::Left(b)) | (GluedPoint::Right(a), GluedPoint::Right(b)) => a <= b,
            _ => false,
        }
    }

    pub fn lt(&self, other: &GluedPoint) -> bool {
        self != other && self.le(other)
    }
}

/// Least upper bound; incomparable interior points meet only at `1`.
pub fn join(a: &GluedPoint, b: &GluedPoint) -> GluedPoint {
    if a.le(b) {
        b.clone()
    } else if b.le(a) {
        a.clone()
    } else {
        GluedPoint::One
    }
}

/// The idealoid `<` is subdivisible: midpoints on a shared line.
pub fn interpolant(a: &GluedPoint, b: &GluedPoint) -> Option<GluedPoint> {
    if !a.lt(b) {
        return None;
    }
    let side = common_line(&[a, b])?;
    GluedPoint::on(side, midpoint(&a.coordinate(), &b.coordinate())).ok()
}

/// A line through all the given points, preferring the left one.
pub fn common_line(points: &[&GluedPoint]) -> Option<Side> {
    [Side::Left, Side::Right].into_iter().find(|&s| points.iter().all(|p| p.on_line(s)))
}

/// An arrow `source → target` with `source ≤ target`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub source: GluedPoint,
    pub target: GluedPoint,
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}->{})", self.source, self.target)
    }
}

impl Arrow {
    pub fn new(source: GluedPoint, target: GluedPoint) -> Result<Self> {
        if !source.le(&target) {
            return Err(Error::PairNotInOrder(source.to_string(), target.to_string()));
        }
        Ok(Arrow { source, target })
    }

    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (a, b) = t.split_once("->").ok_or_else(|| Error::Parse(format!("not an arrow: `{s}`")))?;
        Arrow::new(GluedPoint::parse(a)?, GluedPoint::parse(b)?)
    }
}

/// Membership of `x → y` in the arrow idealoid: both components strictly increase.
pub fn in_arrow_idealoid(x: &Arrow, y: &Arrow) -> bool {
    x.source.lt(&y.source) && x.target.lt(&y.target)
}

/// Open interval `(lo, hi)` as pieces `(side, lo, hi)` of coordinates.
fn open_interval(lo: &GluedPoint, hi: &GluedPoint) -> Vec<(Side, Q, Q)> {
    [Side::Left, Side::Right]
        .into_iter()
        .filter(|&s| lo.on_line(s) && hi.on_line(s) && lo.lt(hi))
        .map(|s| (s, lo.coordinate(), hi.coordinate()))
        .collect()
}

/// Decides whether `x → y` factors as `x → z → y` inside the arrow idealoid, returning
/// the middle arrow when it does.
pub fn arrow_interpolant(x: &Arrow, y: &Arrow) -> Option<Arrow> {
    if !in_arrow_idealoid(x, y) {
        return None;
    }
    let sources = open_interval(&x.source, &y.source);
    let targets = open_interval(&x.target, &y.target);
    for (s1, l1, h1) in &sources {
        for (s2, l2, h2) in &targets {
            // interior points of different copies are incomparable
            if s1 != s2 || l1 >= h2 {
                continue;
            }
            let (lo, hi) = (l1.max(l2), h1.min(h2));
            let (c, c2) = if lo < hi {
                let m = midpoint(lo, hi);
                (m.clone(), m)
            } else {
                (midpoint(l1, h1), midpoint(l2, h2))
            };
            let z = Arrow::new(GluedPoint::on(*s1, c).ok()?, GluedPoint::on(*s2, c2).ok()?).ok()?;
            debug_assert!(in_arrow_idealoid(x, &z) && in_arrow_idealoid(&z, y));
            return Some(z);
        }
    }
    None
}

/// A point `c` with `x.target ≤ c`, `y.source ≤ c` and `c < y.target`; the least one
/// is the join, when it works.
pub fn buffer(x: &Arrow, y: &Arrow) -> Option<GluedPoint> {
    let c = join(&x.target, &y.source);
    c.lt(&y.target).then_some(c)
}

/// Exact membership in the subdivisible core of the arrow idealoid: both components must
/// run along a single line, where straight-line interpolation gives the refinement.
pub fn in_sd_core(x: &Arrow, y: &Arrow) -> bool {
    in_arrow_idealoid(x, y) && common_line(&[&x.source, &x.target, &y.source, &y.target]).is_some()
}

fn line_chain(a: &GluedPoint, b: &GluedPoint, side: Side, depth: u32) -> Result<Chain<GluedPoint>> {
    bisect(a.clone(), b.clone(), depth, |u, v| GluedPoint::on(side, midpoint(&u.coordinate(), &v.coordinate())))
}

fn zip_chains(xs: Chain<GluedPoint>, ys: Chain<GluedPoint>) -> Result<Chain<Arrow>> {
    let values = xs
        .values
        .into_iter()
        .zip(ys.values)
        .map(|(s, t)| Arrow::new(s, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(Chain { index: xs.index, values })
}

/// Depth-`k` refinement of a core pair, by bisecting both components on a common line.
pub fn core_chain(x: &Arrow, y: &Arrow, depth: u32) -> Result<Chain<Arrow>> {
    if !in_sd_core(x, y) {
        return Err(Error::NotInCore(x.to_string(), y.to_string()));
    }
    let side = common_line(&[&x.source, &x.target, &y.source, &y.target]).expect("core pair");
    zip_chains(
        line_chain(&x.source, &y.source, side, depth)?,
        line_chain(&x.target, &y.target, side, depth)?,
    )
}

/// Certificate from a buffer `c`: refine `(a → c) → (b → b')` by subdividing `a → b`
/// and `c → b'` separately; `(a → a') ≤ (a → c)` then gives the original pair.
pub fn buffer_chain(x: &Arrow, y: &Arrow, depth: u32) -> Result<Chain<Arrow>> {
    let c = buffer(x, y).ok_or_else(|| Error::WitnessSearchFailed(format!("buffer for {x} -> {y}")))?;
    if !in_arrow_idealoid(x, y) {
        return Err(Error::NotInCore(x.to_string(), y.to_string()));
    }
    let interp = |u: &GluedPoint, v: &GluedPoint| {
        interpolant(u, v).ok_or_else(|| Error::WitnessSearchFailed(format!("{u} < {v}")))
    };
    let xs = bisect(x.source.clone(), y.source.clone(), depth, interp)?;
    let ys = bisect(c, y.target.clone(), depth, interp)?;
    zip_chains(xs, ys)
}

/// Every pair of the chain lies in the arrow idealoid.
pub fn validate_arrow_chain(chain: &Chain<Arrow>) -> bool {
    chain.index_ok() && chain.all_pairs(in_arrow_idealoid)
}

/// Finite sample: the points `0, 1, k/(n+1), k/(n+1)'` for `1 ≤ k ≤ n`.
pub fn sample_points(n: i64) -> Vec<GluedPoint> {
    let mut out = vec![GluedPoint::Zero];
    out.extend((1..=n).map(|k| GluedPoint::Left(q(k, n + 1))));
    out.extend((1..=n).map(|k| GluedPoint::Right(q(k, n + 1))));
    out.push(GluedPoint::One);
    out
}

/// The sample as a finite poset (labels as printed) with the strict idealoid on it.
pub fn sample_idealoid(n: i64) -> (Vec<GluedPoint>, Idealoid) {
    let pts = sample_points(n);
    let labels: Vec<String> = pts.iter().map(|p| p.to_string()).collect();
    let le = pts.iter().map(|a| pts.iter().map(|b| a.le(b)).collect()).collect();
    let poset = FinitePoset::from_relation(labels, le).expect("glued sample");
    (pts, Idealoid::strict(&poset))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow(s: &str) -> Arrow {
        Arrow::parse(s).unwrap()
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(GluedPoint::parse("1/2'").unwrap(), GluedPoint::Right(q(1, 2)));
        assert_eq!(arrow("(0->1/2')").to_string(), "(0->1/2')");
        assert!(Arrow::parse("1/2->1/4'").is_err());
    }

    #[test]
    fn counterexample_has_no_interpolant() {
        let x = arrow("0->1/2'");
        let y = arrow("1/2->1");
        assert!(in_arrow_idealoid(&x, &y));
        assert_eq!(arrow_interpolant(&x, &y), None);
        assert!(!in_sd_core(&x, &y));
        assert_eq!(buffer(&x, &y), None);
    }

    #[test]
    fn buffered_pairs_are_certified() {
        for (x, y) in [("0->1/4", "1/2->1"), ("0->0", "1/2->1"), ("0->1/4'", "1/2'->1")] {
            let (x, y) = (arrow(x), arrow(y));
            assert!(buffer(&x, &y).is_some());
            assert!(in_sd_core(&x, &y));
            for depth in 0..4 {
                assert!(validate_arrow_chain(&buffer_chain(&x, &y, depth).unwrap()));
                assert!(validate_arrow_chain(&core_chain(&x, &y, depth).unwrap()));
            }
        }
    }

    #[test]
    fn core_without_buffer() {
        let (x, y) = (arrow("0->0"), arrow("1/2->1/2"));
        assert_eq!(buffer(&x, &y), None);
        assert!(in_sd_core(&x, &y));
        assert!(validate_arrow_chain(&core_chain(&x, &y, 3).unwrap()));
    }
}
