//! Frame homomorphisms: finite tables out of Tier-1 frames, and registered
//! endomorphisms of `dint`.

use std::fmt;

use num_traits::Pow;

use crate::error::{Error, Result};
use crate::frame::{Builtin, Element, FiniteFrame, Frame};
use crate::rational::{fmt_q, parse_q, Q};

/// Endomorphisms of `dint`, each the inverse image of a monotone map of `[0,1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DintHom {
    Identity,
    /// `up(q) ↦ up(q^k)`, from `x ↦ x^(1/k)`.
    Power(u32),
    /// `up(q) ↦ up(c)`, from the step map that is `1` on `(c,1]` and `0` elsewhere.
    Step(Q),
}

impl fmt::Display for DintHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DintHom::Identity => write!(f, "id"),
            DintHom::Power(k) => write!(f, "pow:{k}"),
            DintHom::Step(c) => write!(f, "step:{}", fmt_q(c)),
        }
    }
}

impl DintHom {
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "id" {
            return Ok(DintHom::Identity);
        }
        let bad = || Error::Parse(format!("unknown dint endomorphism `{s}`"));
        match s.split_once(':').ok_or_else(bad)? {
            ("pow", k) => match k.parse::<u32>() {
                Ok(k) if k >= 1 => Ok(DintHom::Power(k)),
                _ => Err(bad()),
            },
            ("step", c) => {
                let c = parse_q(c)?;
                if c < Q::from_integer(0.into()) || c >= Q::from_integer(1.into()) {
                    return Err(Error::OutOfRange(fmt_q(&c)));
                }
                Ok(DintHom::Step(c))
            }
            _ => Err(bad()),
        }
    }

    pub fn registered() -> Vec<DintHom> {
        vec![
            DintHom::Identity,
            DintHom::Power(2),
            DintHom::Power(3),
            DintHom::Step(crate::rational::q(1, 2)),
            DintHom::Step(crate::rational::q(0, 1)),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrameHom {
    Table { source: FiniteFrame, target: Frame, table: Vec<Element> },
    Dint(DintHom),
}

impl FrameHom {
    pub fn table(source: FiniteFrame, target: Frame, table: Vec<Element>) -> Result<Self> {
        if table.len() != source.len() {
            return Err(Error::InvalidMap(format!("{} images for {} elements", table.len(), source.len())));
        }
        let table = table.into_iter().map(|e| target.normalize(e)).collect::<Result<Vec<_>>>()?;
        Ok(FrameHom::Table { source, target, table })
    }

    pub fn source(&self) -> Frame {
        match self {
            FrameHom::Table { source, .. } => Frame::Finite(source.clone()),
            FrameHom::Dint(_) => Frame::Builtin(Builtin::Dint),
        }
    }

    pub fn target(&self) -> Frame {
        match self {
            FrameHom::Table { target, .. } => target.clone(),
            FrameHom::Dint(_) => Frame::Builtin(Builtin::Dint),
        }
    }

    pub fn apply(&self, x: &Element) -> Element {
        match (self, x) {
            (FrameHom::Table { table, .. }, Element::Index(i)) => table[*i].clone(),
            (FrameHom::Dint(_), Element::Bot | Element::Top) => x.clone(),
            (FrameHom::Dint(h), Element::Up(q)) => match h {
                DintHom::Identity => x.clone(),
                DintHom::Power(k) => Element::Up(Pow::pow(q, *k)),
                DintHom::Step(c) => Element::Up(c.clone()),
            },
            _ => panic!("element outside the source frame"),
        }
    }

    fn source_sample(&self, max_den: i64) -> Vec<Element> {
        self.source().sample(max_den)
    }

    /// Checks `⊤`, `⊥`, binary meets and binary joins on the (sampled) source.
    pub fn hom_counterexample(&self, max_den: i64) -> Option<String> {
        let (s, t) = (self.source(), self.target());
        if self.apply(&s.top()) != t.top() {
            return Some("top is not preserved".into());
        }
        if self.apply(&s.bot()) != t.bot() {
            return Some("bottom is not preserved".into());
        }
        let xs = self.source_sample(max_den);
        for x in &xs {
            for y in &xs {
                let (fx, fy) = (self.apply(x), self.apply(y));
                if self.apply(&s.meet(x, y)) != t.meet(&fx, &fy) {
                    return Some(format!("meet of {} and {} is not preserved", s.show(x), s.show(y)));
                }
                if self.apply(&s.join(x, y)) != t.join(&fx, &fy) {
                    return Some(format!("join of {} and {} is not preserved", s.show(x), s.show(y)));
                }
            }
        }
        None
    }

    /// First pair `x ≪ y` with `f(x) ≪ f(y)` failing, over all pairs (Tier-1) or basis pairs.
    pub fn way_below_counterexample(&self, max_den: i64) -> Option<(Element, Element)> {
        let (s, t) = (self.source(), self.target());
        let xs = self.source_sample(max_den);
        for x in &xs {
            for y in &xs {
                if s.way_below(x, y) && !t.way_below(&self.apply(x), &self.apply(y)) {
                    return Some((x.clone(), y.clone()));
                }
            }
        }
        None
    }

    pub fn preserves_way_below(&self, max_den: i64) -> bool {
        self.way_below_counterexample(max_den).is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn dint_homs() {
        for h in DintHom::registered() {
            let f = FrameHom::Dint(h.clone());
            assert_eq!(f.hom_counterexample(6), None, "{h}");
        }
        assert!(FrameHom::Dint(DintHom::Identity).preserves_way_below(8));
        assert!(FrameHom::Dint(DintHom::Power(2)).preserves_way_below(8));
        let step = FrameHom::Dint(DintHom::Step(q(1, 2)));
        assert!(!step.preserves_way_below(8));
        assert_eq!(DintHom::parse("pow:2").unwrap(), DintHom::Power(2));
        assert_eq!(DintHom::parse("step:1/3").unwrap().to_string(), "step:1/3");
    }

    #[test]
    fn two_element_into_cofinite() {
        let two = FiniteFrame::two("0", "1");
        let f = FrameHom::table(two, Frame::Builtin(Builtin::Cofinite), vec![Element::Bot, Element::Top]).unwrap();
        assert_eq!(f.hom_counterexample(4), None);
        assert!(f.preserves_way_below(4));
    }
}
