//! Frames in two tiers: finite distributive lattices, enumerated exhaustively, and
//! named countable built-ins with closed-form decision procedures.
//!
//! Built-ins:
//! - `dint`: opens `(q,1]` of `[0,1]` with the upper topology, written `up:q`.
//! - `dint_op`: opens `[0,r)`, written `down:r`; the mirror image of `dint`.
//! - `cofinite`: the cofinite topology on `N`, `cof:F` is `N \ F`.
//! - `dint_ideals`: the ideals of `dint`, a chain of cuts `open:r ⊂ closed:r`.

pub mod hom;
pub mod ideals;

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::idealoid::{Idealoid, RelationKind};
use crate::order::{downset_lattice, FiniteLattice, FinitePoset};
use crate::rational::{farey, fmt_q, parse_q, Q};

pub use hom::{DintHom, FrameHom};
pub use ideals::{bm_compactify, flachsmeyer, flachsmeyer_section, very_schwartz_subframe};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Builtin {
    Dint,
    DintOp,
    Cofinite,
    DintIdeals,
}

impl Builtin {
    pub fn name(self) -> &'static str {
        match self {
            Builtin::Dint => "dint",
            Builtin::DintOp => "dint_op",
            Builtin::Cofinite => "cofinite",
            Builtin::DintIdeals => "dint_ideals",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "dint" => Ok(Builtin::Dint),
            "dint_op" => Ok(Builtin::DintOp),
            "cofinite" => Ok(Builtin::Cofinite),
            "dint_ideals" => Ok(Builtin::DintIdeals),
            _ => Err(Error::Parse(format!("unknown built-in frame `{s}`"))),
        }
    }
}

/// A cut of the chain `dint`, excluding the two trivial ideals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cut {
    /// `{⊥} ∪ {up(q) : q > r}`
    Open(Q),
    /// `{⊥} ∪ {up(q) : q ≥ r}`, the principal ideal of `up(r)`.
    Closed(Q),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Index(usize),
    Bot,
    Top,
    Up(Q),
    Down(Q),
    Cof(BTreeSet<u64>),
    Cut(Cut),
}

/// A finite distributive lattice; labels are the display names of its elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteFrame {
    lattice: FiniteLattice,
}

impl FiniteFrame {
    pub fn new(lattice: FiniteLattice) -> Result<Self> {
        if let Some((x, y, z)) = lattice.distributivity_counterexample() {
            return Err(Error::NotDistributive(
                lattice.label(x).into(),
                lattice.label(y).into(),
                lattice.label(z).into(),
            ));
        }
        Ok(FiniteFrame { lattice })
    }

    /// The downset lattice of `p`; element labels are downset ids in braces.
    pub fn of_downsets(p: &FinitePoset, limit: usize) -> Result<Self> {
        let lattice = downset_lattice(p, limit)?.0.relabel(|l| format!("{{{l}}}"))?;
        Ok(FiniteFrame { lattice })
    }

    /// The chain `⊥ < ⊤` with the given labels.
    pub fn two(bot: &str, top: &str) -> Self {
        let p = FinitePoset::build(&[bot, top], &[(bot, top)]).expect("two-element chain");
        FiniteFrame { lattice: FiniteLattice::from_poset(p).expect("two-element lattice") }
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    /// `≪` coincides with `≤`: every directed subset of a finite lattice has a maximum.
    pub fn way_below(&self, x: usize, y: usize) -> bool {
        self.lattice.le(x, y)
    }

    pub fn rather_below(&self, x: usize, y: usize) -> Option<usize> {
        let r = self.lattice.pseudocomplement(x);
        (self.lattice.join(y, r) == self.lattice.top()).then_some(r)
    }

    pub fn relation(&self, kind: RelationKind, x: usize, y: usize) -> bool {
        match kind {
            RelationKind::Order => self.lattice.le(x, y),
            RelationKind::WayBelow => self.way_below(x, y),
            RelationKind::RatherBelow => self.rather_below(x, y).is_some(),
        }
    }

    pub fn relation_idealoid(&self, kind: RelationKind) -> Idealoid {
        Idealoid::from_fn(self.lattice.poset().clone(), |x, y| self.relation(kind, x, y))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Frame {
    Finite(FiniteFrame),
    Builtin(Builtin),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContinuityReport {
    pub stably_continuous: bool,
    pub mode: String,
    pub certificate: String,
    pub counterexample: Option<String>,
}

impl Frame {
    pub fn finite(p: &FinitePoset, limit: usize) -> Result<Self> {
        Ok(Frame::Finite(FiniteFrame::of_downsets(p, limit)?))
    }

    pub fn name(&self) -> String {
        match self {
            Frame::Finite(f) => format!("finite({} elements)", f.len()),
            Frame::Builtin(b) => b.name().into(),
        }
    }

    pub fn as_finite(&self) -> Option<&FiniteFrame> {
        match self {
            Frame::Finite(f) => Some(f),
            Frame::Builtin(_) => None,
        }
    }

    pub fn bot(&self) -> Element {
        match self {
            Frame::Finite(f) => Element::Index(f.lattice.bottom()),
            Frame::Builtin(_) => Element::Bot,
        }
    }

    pub fn top(&self) -> Element {
        match self {
            Frame::Finite(f) => Element::Index(f.lattice.top()),
            Frame::Builtin(_) => Element::Top,
        }
    }

    /// Parses `bot`, `top`, `up:q`, `down:r`, `cof:1,2`, `open:r`, `closed:r`, or a
    /// finite element label (optionally in braces).
    pub fn parse_element(&self, s: &str) -> Result<Element> {
        let s = s.trim();
        let bad = || Error::InvalidElement(s.to_string());
        match self {
            Frame::Finite(f) => {
                let l = &f.lattice;
                match s {
                    "bot" => return Ok(Element::Index(l.bottom())),
                    "top" => return Ok(Element::Index(l.top())),
                    _ => {}
                }
                if let Ok(i) = l.poset().index_of(s) {
                    return Ok(Element::Index(i));
                }
                // downset ids: members in any order, braces optional
                let inner = s.strip_prefix('{').and_then(|t| t.strip_suffix('}')).unwrap_or(s);
                let mut parts: Vec<&str> = inner.split(',').map(str::trim).filter(|t| !t.is_empty()).collect();
                parts.sort_unstable();
                l.poset().index_of(&format!("{{{}}}", parts.join(","))).map(Element::Index).map_err(|_| bad())
            }
            Frame::Builtin(b) => {
                if s == "bot" {
                    return Ok(Element::Bot);
                }
                if s == "top" {
                    return Ok(Element::Top);
                }
                let (tag, arg) = s.split_once(':').ok_or_else(bad)?;
                let e = match (b, tag) {
                    (Builtin::Dint, "up") => Element::Up(parse_q(arg)?),
                    (Builtin::DintOp, "down") => Element::Down(parse_q(arg)?),
                    (Builtin::Cofinite, "cof") => {
                        let set = arg
                            .split(',')
                            .map(str::trim)
                            .filter(|t| !t.is_empty())
                            .map(|t| t.parse::<u64>().map_err(|_| bad()))
                            .collect::<Result<BTreeSet<u64>>>()?;
                        Element::Cof(set)
                    }
                    (Builtin::DintIdeals, "open") => Element::Cut(Cut::Open(parse_q(arg)?)),
                    (Builtin::DintIdeals, "closed") => Element::Cut(Cut::Closed(parse_q(arg)?)),
                    _ => return Err(bad()),
                };
                self.normalize(e)
            }
        }
    }

    /// Brings a built-in term to normal form and rejects out-of-range parameters.
    pub fn normalize(&self, e: Element) -> Result<Element> {
        let unit = |q: &Q| *q >= Q::zero() && *q <= Q::one();
        let bad = |e: &Element| Error::InvalidElement(self.show(e));
        match (self, e) {
            (Frame::Finite(f), Element::Index(i)) if i < f.len() => Ok(Element::Index(i)),
            (Frame::Builtin(_), e @ (Element::Bot | Element::Top)) => Ok(e),
            (Frame::Builtin(Builtin::Dint), Element::Up(q)) if unit(&q) => {
                Ok(if q.is_one() { Element::Bot } else { Element::Up(q) })
            }
            (Frame::Builtin(Builtin::DintOp), Element::Down(r)) if unit(&r) => {
                Ok(if r.is_zero() { Element::Bot } else { Element::Down(r) })
            }
            (Frame::Builtin(Builtin::Cofinite), Element::Cof(f)) => {
                Ok(if f.is_empty() { Element::Top } else { Element::Cof(f) })
            }
            (Frame::Builtin(Builtin::DintIdeals), Element::Cut(c)) => match c {
                Cut::Open(r) if unit(&r) => Ok(if r.is_one() { Element::Bot } else { Element::Cut(Cut::Open(r)) }),
                Cut::Closed(r) if unit(&r) && !r.is_one() => Ok(Element::Cut(Cut::Closed(r))),
                c => Err(bad(&Element::Cut(c))),
            },
            (_, e) => Err(bad(&e)),
        }
    }

    pub fn show(&self, e: &Element) -> String {
        match (self, e) {
            (Frame::Finite(f), Element::Index(i)) if *i < f.len() => f.lattice.label(*i).to_string(),
            (_, Element::Index(i)) => format!("#{i}"),
            (_, Element::Bot) => "bot".into(),
            (_, Element::Top) => "top".into(),
            (_, Element::Up(q)) => format!("up:{}", fmt_q(q)),
            (_, Element::Down(r)) => format!("down:{}", fmt_q(r)),
            (_, Element::Cof(f)) => {
                format!("cof:{}", f.iter().map(u64::to_string).collect::<Vec<_>>().join(","))
            }
            (_, Element::Cut(Cut::Open(r))) => format!("open:{}", fmt_q(r)),
            (_, Element::Cut(Cut::Closed(r))) => format!("closed:{}", fmt_q(r)),
        }
    }

    /// Position in the chain for the chain-shaped built-ins; larger means higher.
    fn chain_key(&self, e: &Element) -> Option<(i8, Q, i8)> {
        let b = match self {
            Frame::Builtin(b) if *b != Builtin::Cofinite => b,
            _ => return None,
        };
        Some(match (b, e) {
            (_, Element::Bot) => (0, Q::zero(), 0),
            (_, Element::Top) => (2, Q::zero(), 0),
            (Builtin::Dint, Element::Up(q)) => (1, -q.clone(), 0),
            (Builtin::DintOp, Element::Down(r)) => (1, r.clone(), 0),
            (Builtin::DintIdeals, Element::Cut(Cut::Open(r))) => (1, -r.clone(), 0),
            (Builtin::DintIdeals, Element::Cut(Cut::Closed(r))) => (1, -r.clone(), 1),
            _ => return None,
        })
    }

    fn idx(e: &Element) -> usize {
        match e {
            Element::Index(i) => *i,
            _ => panic!("expected a finite element"),
        }
    }

    pub fn le(&self, x: &Element, y: &Element) -> bool {
        match self {
            Frame::Finite(f) => f.lattice.le(Self::idx(x), Self::idx(y)),
            Frame::Builtin(Builtin::Cofinite) => match (x, y) {
                (Element::Bot, _) | (_, Element::Top) => true,
                (Element::Cof(a), Element::Cof(b)) => b.is_subset(a),
                _ => false,
            },
            Frame::Builtin(_) => self.chain_key(x) <= self.chain_key(y),
        }
    }

    pub fn join(&self, x: &Element, y: &Element) -> Element {
        match self {
            Frame::Finite(f) => Element::Index(f.lattice.join(Self::idx(x), Self::idx(y))),
            Frame::Builtin(Builtin::Cofinite) => match (x, y) {
                (Element::Cof(a), Element::Cof(b)) => {
                    let c: BTreeSet<u64> = a.intersection(b).copied().collect();
                    if c.is_empty() {
                        Element::Top
                    } else {
                        Element::Cof(c)
                    }
                }
                _ if self.le(x, y) => y.clone(),
                _ => x.clone(),
            },
            Frame::Builtin(_) => {
                if self.le(x, y) {
                    y.clone()
                } else {
                    x.clone()
                }
            }
        }
    }

    pub fn meet(&self, x: &Element, y: &Element) -> Element {
        match self {
            Frame::Finite(f) => Element::Index(f.lattice.meet(Self::idx(x), Self::idx(y))),
            Frame::Builtin(Builtin::Cofinite) => match (x, y) {
                (Element::Cof(a), Element::Cof(b)) => Element::Cof(a.union(b).copied().collect()),
                _ if self.le(x, y) => x.clone(),
                _ => y.clone(),
            },
            Frame::Builtin(_) => {
                if self.le(x, y) {
                    x.clone()
                } else {
                    y.clone()
                }
            }
        }
    }

    pub fn way_below(&self, x: &Element, y: &Element) -> bool {
        match self {
            Frame::Finite(f) => f.way_below(Self::idx(x), Self::idx(y)),
            Frame::Builtin(b) => match (b, x, y) {
                (_, Element::Bot, _) | (_, _, Element::Top) => true,
                (Builtin::Cofinite, _, _) => self.le(x, y),
                (Builtin::Dint, Element::Up(q), Element::Up(q2)) => q > q2,
                (Builtin::DintOp, Element::Down(r), Element::Down(r2)) => r < r2,
                (Builtin::DintIdeals, _, _) => self.le(&compact_cover(x), y),
                _ => false,
            },
        }
    }

    /// A witness `r` with `x ∧ r = ⊥` and `y ∨ r = ⊤`; the pseudocomplement of `x`
    /// works whenever anything does.
    pub fn rather_below(&self, x: &Element, y: &Element) -> Option<Element> {
        match self {
            Frame::Finite(f) => f.rather_below(Self::idx(x), Self::idx(y)).map(Element::Index),
            // two non-bottom elements of a built-in always meet above ⊥
            Frame::Builtin(_) => match (x, y) {
                (Element::Bot, _) => Some(Element::Top),
                (_, Element::Top) => Some(Element::Bot),
                _ => None,
            },
        }
    }

    pub fn relation(&self, kind: RelationKind, x: &Element, y: &Element) -> bool {
        match kind {
            RelationKind::Order => self.le(x, y),
            RelationKind::WayBelow => self.way_below(x, y),
            RelationKind::RatherBelow => self.rather_below(x, y).is_some(),
        }
    }

    /// All elements (Tier-1), or basis terms with denominators up to `max_den`.
    pub fn sample(&self, max_den: i64) -> Vec<Element> {
        match self {
            Frame::Finite(f) => (0..f.len()).map(Element::Index).collect(),
            Frame::Builtin(b) => {
                let qs = farey(max_den);
                let mut out = vec![Element::Bot];
                match b {
                    Builtin::Dint => out.extend(qs.iter().filter(|q| !q.is_one()).cloned().map(Element::Up)),
                    Builtin::DintOp => out.extend(qs.iter().filter(|q| !q.is_zero()).cloned().map(Element::Down)),
                    Builtin::Cofinite => {
                        let n = max_den.clamp(1, 6) as u64;
                        for mask in 1u64..(1 << n) {
                            out.push(Element::Cof((0..n).filter(|i| mask >> i & 1 == 1).collect()));
                        }
                    }
                    Builtin::DintIdeals => {
                        for r in qs.iter().filter(|q| !q.is_one()) {
                            out.push(Element::Cut(Cut::Open(r.clone())));
                            out.push(Element::Cut(Cut::Closed(r.clone())));
                        }
                    }
                }
                out.push(Element::Top);
                out
            }
        }
    }

    /// Tier-1: both conditions checked on every element. Built-ins: closed-form verdict.
    pub fn is_stably_continuous(&self) -> ContinuityReport {
        match self {
            Frame::Finite(f) => {
                let l = &f.lattice;
                let n = l.len();
                let approx = (0..n).find(|&x| l.join_all((0..n).filter(|&y| f.way_below(y, x))) != x);
                let meets = (0..n).find_map(|x| {
                    (0..n).find_map(|y| {
                        (0..n)
                            .find(|&z| f.way_below(x, y) && f.way_below(x, z) && !f.way_below(x, l.meet(y, z)))
                            .map(|z| (x, y, z))
                    })
                });
                let top_ok = f.way_below(l.top(), l.top());
                let counterexample = approx
                    .map(|x| format!("{} is not the join of the elements way below it", self.show(&Element::Index(x))))
                    .or_else(|| {
                        meets.map(|(x, y, z)| {
                            format!("{} is way below {} and {} but not their meet", l.label(x), l.label(y), l.label(z))
                        })
                    })
                    .or_else(|| (!top_ok).then(|| "top is not compact".to_string()));
                ContinuityReport {
                    stably_continuous: counterexample.is_none(),
                    mode: "finite-degenerate".into(),
                    certificate: "way-below coincides with the order".into(),
                    counterexample,
                }
            }
            Frame::Builtin(b) => {
                let certificate = match b {
                    Builtin::Dint => "dense interpolation q > c > q'",
                    Builtin::DintOp => "dense interpolation r < c < r'",
                    Builtin::Cofinite => "way-below coincides with the order (algebraic, every open compact)",
                    Builtin::DintIdeals => "algebraic: compact elements bot, closed:r, top are closed under finite meets",
                };
                ContinuityReport {
                    stably_continuous: true,
                    mode: "closed-form".into(),
                    certificate: certificate.into(),
                    counterexample: None,
                }
            }
        }
    }

    /// `x = ⋁{y : y ≺ x}` for every element; returns the first failure.
    pub fn regularity_counterexample(&self) -> Option<Element> {
        match self {
            Frame::Finite(f) => {
                let l = &f.lattice;
                (0..l.len())
                    .find(|&x| l.join_all((0..l.len()).filter(|&y| f.rather_below(y, x).is_some())) != x)
                    .map(Element::Index)
            }
            // only ⊥ is rather below a proper element
            Frame::Builtin(b) => Some(match b {
                Builtin::Dint => Element::Up(crate::rational::q(1, 2)),
                Builtin::DintOp => Element::Down(crate::rational::q(1, 2)),
                Builtin::Cofinite => Element::Cof([0].into_iter().collect()),
                Builtin::DintIdeals => Element::Cut(Cut::Closed(crate::rational::q(1, 2))),
            }),
        }
    }

    pub fn is_regular(&self) -> bool {
        self.regularity_counterexample().is_none()
    }

    /// `⊤ ≪ ⊤`.
    pub fn has_compact_top(&self) -> bool {
        self.way_below(&self.top(), &self.top())
    }
}

/// Least compact element above an ideal of `dint`: `open:r ↦ closed:r`.
pub(crate) fn compact_cover(x: &Element) -> Element {
    match x {
        Element::Cut(Cut::Open(r)) => Element::Cut(Cut::Closed(r.clone())),
        e => e.clone(),
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
