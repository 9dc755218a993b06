//! Idealoids on the built-in frames, given by a named relation with closed-form
//! interpolants and successors.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::frame::{compact_cover, Builtin, Cut, Element, Frame};
use crate::idealoid::{bisect, Chain};
use crate::rational::{midpoint, q, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationKind {
    Order,
    WayBelow,
    RatherBelow,
}

impl RelationKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "order" | "le" => Ok(RelationKind::Order),
            "way-below" => Ok(RelationKind::WayBelow),
            "rather-below" => Ok(RelationKind::RatherBelow),
            _ => Err(Error::Parse(format!("unknown relation `{s}`"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RelationKind::Order => "order",
            RelationKind::WayBelow => "way-below",
            RelationKind::RatherBelow => "rather-below",
        }
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymbolicIdealoid {
    pub frame: Builtin,
    pub relation: RelationKind,
}

impl SymbolicIdealoid {
    pub fn new(frame: Builtin, relation: RelationKind) -> Self {
        SymbolicIdealoid { frame, relation }
    }

    pub fn frame(&self) -> Frame {
        Frame::Builtin(self.frame)
    }

    pub fn contains(&self, x: &Element, y: &Element) -> bool {
        self.frame().relation(self.relation, x, y)
    }

    /// The closed-form interpolant, or `None` when `(x, y)` is not in the relation.
    ///
    /// Way-below on `dint` and `dint_op` uses midpoints; elsewhere one endpoint works.
    pub fn interpolant(&self, x: &Element, y: &Element) -> Option<Element> {
        if !self.contains(x, y) {
            return None;
        }
        let out = match (self.relation, self.frame, x, y) {
            (RelationKind::Order, ..) => x.clone(),
            (RelationKind::RatherBelow, _, Element::Bot, _) => Element::Bot,
            (RelationKind::RatherBelow, ..) => Element::Top,
            (RelationKind::WayBelow, _, Element::Bot, _) => Element::Bot,
            (RelationKind::WayBelow, Builtin::Dint, Element::Up(a), Element::Up(b)) => Element::Up(midpoint(a, b)),
            (RelationKind::WayBelow, Builtin::DintOp, Element::Down(a), Element::Down(b)) => {
                Element::Down(midpoint(a, b))
            }
            (RelationKind::WayBelow, Builtin::Dint | Builtin::DintOp, _, _) => Element::Top,
            (RelationKind::WayBelow, Builtin::Cofinite, _, _) => x.clone(),
            (RelationKind::WayBelow, Builtin::DintIdeals, _, _) => compact_cover(x),
        };
        debug_assert!(self.contains(x, &out) && self.contains(&out, y));
        Some(out)
    }

    /// The subdivisible core. Every built-in relation here interpolates, so the core is
    /// the relation itself; the interpolant procedure is the certificate.
    pub fn sd_core(&self) -> SymbolicIdealoid {
        *self
    }

    pub fn certificate(&self) -> &'static str {
        match (self.relation, self.frame) {
            (RelationKind::Order, _) => "reflexive interpolant x",
            (RelationKind::RatherBelow, _) => "interpolant bot for (bot, y), top for (x, top)",
            (RelationKind::WayBelow, Builtin::Dint) => "midpoint up:(q+q')/2 for q > q'; top for (x, top)",
            (RelationKind::WayBelow, Builtin::DintOp) => "midpoint down:(r+r')/2 for r < r'; top for (x, top)",
            (RelationKind::WayBelow, Builtin::Cofinite) => "way-below is the order; interpolant x",
            (RelationKind::WayBelow, Builtin::DintIdeals) => "least compact element above x",
        }
    }

    /// Least successor: halving for way-below on `dint`.
    pub fn successor(&self, x: &Element) -> Result<Element> {
        let out = match (self.relation, self.frame, x) {
            (RelationKind::Order, ..) => x.clone(),
            (_, _, Element::Bot) => Element::Bot,
            (RelationKind::RatherBelow, ..) => Element::Top,
            (RelationKind::WayBelow, Builtin::Dint, Element::Up(a)) if !a.is_zero() => Element::Up(a / q(2, 1)),
            (RelationKind::WayBelow, Builtin::DintOp, Element::Down(a)) if !a.is_one() => {
                Element::Down((a + Q::one()) / q(2, 1))
            }
            (RelationKind::WayBelow, Builtin::Dint | Builtin::DintOp, _) => Element::Top,
            (RelationKind::WayBelow, Builtin::Cofinite, _) => x.clone(),
            (RelationKind::WayBelow, Builtin::DintIdeals, _) => compact_cover(x),
        };
        if !self.contains(x, &out) {
            return Err(Error::NoSuccessor(self.frame().show(x)));
        }
        Ok(out)
    }

    pub fn sequentialize(&self, seed: &Element, n: usize) -> Result<Vec<Element>> {
        let mut out = Vec::with_capacity(n);
        let mut cur = seed.clone();
        for i in 0..n {
            out.push(cur.clone());
            if i + 1 < n {
                cur = self.successor(&cur)?;
            }
        }
        Ok(out)
    }

    pub fn subdivision_chain(&self, a: &Element, b: &Element, depth: u32) -> Result<Chain<Element>> {
        let f = self.frame();
        if !self.sd_core().contains(a, b) {
            return Err(Error::NotInCore(f.show(a), f.show(b)));
        }
        bisect(a.clone(), b.clone(), depth, |x, y| {
            self.interpolant(x, y).ok_or_else(|| Error::WitnessSearchFailed(self.frame.name().into()))
        })
    }

    pub fn validate_chain(&self, chain: &Chain<Element>) -> bool {
        let f = self.frame();
        chain.index_ok()
            && chain.values.windows(2).all(|w| f.le(&w[0], &w[1]))
            && chain.all_pairs(|x, y| self.contains(x, y))
    }

    /// Restriction of an ideal of `dint`, described by its classified form.
    pub fn is_restricted_ideal(&self, ideal: &Element) -> Result<bool> {
        if self.frame != Builtin::Dint {
            return Err(Error::NoClassification(self.frame.name().into()));
        }
        Ok(match (self.relation, ideal) {
            (RelationKind::Order, _) => true,
            (_, Element::Bot | Element::Top) => true,
            (RelationKind::RatherBelow, _) => false,
            // up(r) has nothing strictly below it inside closed:r
            (RelationKind::WayBelow, Element::Cut(Cut::Open(_))) => true,
            (RelationKind::WayBelow, Element::Cut(Cut::Closed(_))) => false,
            (_, e) => return Err(Error::NotAnIdeal(Frame::Builtin(Builtin::DintIdeals).show(e))),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dint_chain_example() {
        let i = SymbolicIdealoid::new(Builtin::Dint, RelationKind::WayBelow);
        let c = i.subdivision_chain(&Element::Up(q(3, 4)), &Element::Up(q(1, 4)), 2).unwrap();
        let expect: Vec<Element> = [q(3, 4), q(5, 8), q(1, 2), q(3, 8), q(1, 4)].into_iter().map(Element::Up).collect();
        assert_eq!(c.values, expect);
        assert_eq!(c.index, vec![q(0, 1), q(1, 3), q(1, 2), q(2, 3), q(1, 1)]);
        assert!(i.validate_chain(&c));
    }

    #[test]
    fn dint_sequentialize_halves() {
        let i = SymbolicIdealoid::new(Builtin::Dint, RelationKind::WayBelow);
        let s = i.sequentialize(&Element::Up(q(1, 2)), 3).unwrap();
        assert_eq!(s, vec![Element::Up(q(1, 2)), Element::Up(q(1, 4)), Element::Up(q(1, 8))]);
        assert_eq!(i.successor(&Element::Up(q(0, 1))).unwrap(), Element::Top);
    }

    #[test]
    fn not_in_core() {
        let i = SymbolicIdealoid::new(Builtin::Dint, RelationKind::WayBelow);
        assert!(i.subdivision_chain(&Element::Up(q(1, 2)), &Element::Up(q(1, 2)), 1).is_err());
    }

    #[test]
    fn restricted_cuts() {
        let i = SymbolicIdealoid::new(Builtin::Dint, RelationKind::WayBelow);
        assert!(i.is_restricted_ideal(&Element::Cut(Cut::Open(q(1, 3)))).unwrap());
        assert!(!i.is_restricted_ideal(&Element::Cut(Cut::Closed(q(1, 3)))).unwrap());
        let r = SymbolicIdealoid::new(Builtin::Dint, RelationKind::RatherBelow);
        assert!(!r.is_restricted_ideal(&Element::Cut(Cut::Open(q(1, 3)))).unwrap());
        assert!(r.is_restricted_ideal(&Element::Bot).unwrap());
    }
}
