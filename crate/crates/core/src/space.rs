//! Stably compact spaces over the frame engine.
//!
//! A finite space is stored as its specialization order; its opens are the upper sets,
//! so saturated sets are upper sets and the de Groot dual is the opposite order.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::frame::{Builtin, DintHom, Element, FiniteFrame, Frame, FrameHom};
use crate::order::{FiniteLattice, FinitePoset, MonotoneMap};
use crate::rational::{farey, fmt_q, Q};

pub const CONVENTION: &str = "opens are upper sets of the specialization order";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpaceDescriptor {
    Finite(FinitePoset),
    Builtin(Builtin),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NachbinSpace {
    pub order: FinitePoset,
}

impl SpaceDescriptor {
    pub fn name(&self) -> String {
        match self {
            SpaceDescriptor::Finite(p) => format!("finite({} points)", p.len()),
            SpaceDescriptor::Builtin(b) => b.name().into(),
        }
    }

    /// The frame of opens: downsets of the opposite order, labelled by upper-set ids.
    pub fn frame(&self, limit: usize) -> Result<Frame> {
        match self {
            SpaceDescriptor::Finite(p) => Frame::finite(&p.opposite(), limit),
            SpaceDescriptor::Builtin(b) => Ok(Frame::Builtin(*b)),
        }
    }

    pub fn de_groot_dual(&self) -> Result<SpaceDescriptor> {
        match self {
            SpaceDescriptor::Finite(p) => Ok(SpaceDescriptor::Finite(p.opposite())),
            SpaceDescriptor::Builtin(Builtin::Dint) => Ok(SpaceDescriptor::Builtin(Builtin::DintOp)),
            SpaceDescriptor::Builtin(Builtin::DintOp) => Ok(SpaceDescriptor::Builtin(Builtin::Dint)),
            SpaceDescriptor::Builtin(b) => Err(Error::NoDual(b.name().into())),
        }
    }

    /// Every upper set, ordered by size and then by member indices.
    pub fn compact_saturated_sets(&self, limit: usize) -> Result<Vec<Vec<usize>>> {
        match self {
            SpaceDescriptor::Finite(p) => {
                Ok(p.opposite().downsets(limit)?.into_iter().map(|d| d.members().to_vec()).collect())
            }
            SpaceDescriptor::Builtin(b) => {
                Err(Error::TierUnsupported(format!("{b}: use the closed-interval family")))
            }
        }
    }

    pub fn to_nachbin(&self) -> Result<NachbinSpace> {
        match self {
            SpaceDescriptor::Finite(p) => Ok(NachbinSpace { order: p.clone() }),
            SpaceDescriptor::Builtin(b) => Err(Error::TierUnsupported(b.name().into())),
        }
    }

    pub fn from_nachbin(n: &NachbinSpace) -> SpaceDescriptor {
        SpaceDescriptor::Finite(n.order.clone())
    }

    pub fn patch(&self) -> PatchReport {
        match self {
            SpaceDescriptor::Finite(p) => {
                // {x} = ↑x ∩ ↓x: an open meets the complement of a compact saturated set
                let separated = (0..p.len()).all(|x| {
                    let up = p.up_closure(&[x]);
                    let down = p.down_closure(&[x]);
                    up.iter().filter(|y| down.contains(y)).count() == 1
                });
                PatchReport {
                    topology: if separated { "discrete".into() } else { "not discrete".into() },
                    basis: (0..p.len()).map(|x| format!("{{{}}}", p.label(x))).collect(),
                    discrete: separated,
                }
            }
            SpaceDescriptor::Builtin(Builtin::Dint | Builtin::DintOp) => PatchReport {
                topology: "standard topology on [0,1]".into(),
                basis: vec!["(q,q')".into(), "[0,q')".into(), "(q,1]".into()],
                discrete: false,
            },
            SpaceDescriptor::Builtin(b) => PatchReport {
                topology: format!("patch of {b}: opens together with complements of compact saturated sets"),
                basis: vec![],
                discrete: false,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatchReport {
    pub topology: String,
    pub basis: Vec<String>,
    pub discrete: bool,
}

/// Saturated subsets of `[0,1]` with the upper topology: the up-closed intervals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DintSaturated {
    Empty,
    /// `[r,1]`, compact.
    Closed(Q),
    /// `(r,1]`, open and not compact.
    Open(Q),
}

impl DintSaturated {
    pub fn is_compact(&self) -> bool {
        !matches!(self, DintSaturated::Open(_))
    }

    pub fn show(&self) -> String {
        match self {
            DintSaturated::Empty => "∅".into(),
            DintSaturated::Closed(r) => format!("[{},1]", fmt_q(r)),
            DintSaturated::Open(r) => format!("({},1]", fmt_q(r)),
        }
    }

    /// Compact saturated sets with denominators up to `max_den`.
    pub fn compact_family(max_den: i64) -> Vec<DintSaturated> {
        let mut out = vec![DintSaturated::Empty];
        out.extend(farey(max_den).into_iter().map(DintSaturated::Closed));
        out
    }
}

/// Preimage of a saturated set along the point map behind a registered endomorphism.
pub fn dint_preimage(h: &DintHom, k: &DintSaturated) -> DintSaturated {
    use num_traits::{Pow, Zero};
    match (h, k) {
        (_, DintSaturated::Empty) => DintSaturated::Empty,
        (DintHom::Identity, k) => k.clone(),
        // x ↦ x^(1/k)
        (DintHom::Power(e), DintSaturated::Closed(r)) => DintSaturated::Closed(Pow::pow(r, *e)),
        (DintHom::Power(e), DintSaturated::Open(r)) => DintSaturated::Open(Pow::pow(r, *e)),
        // the step map only takes the values 0 and 1
        (DintHom::Step(_), DintSaturated::Closed(r)) if r.is_zero() => DintSaturated::Closed(Q::zero()),
        (DintHom::Step(c), _) => DintSaturated::Open(c.clone()),
    }
}

#[derive(Clone, Debug)]
pub enum PerfectMap {
    /// A map of points between finite spaces.
    Finite(MonotoneMap),
    Dint(DintHom),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PerfectReport {
    pub preimage_criterion: bool,
    pub way_below_criterion: bool,
    pub agree: bool,
    pub counterexample: Option<String>,
}

/// The frame map `f⁻¹ : O(Y) → O(X)`.
pub fn inverse_image_hom(f: &MonotoneMap, limit: usize) -> Result<FrameHom> {
    let src = FiniteFrame::of_downsets(&f.target.opposite(), limit)?;
    let tgt = Frame::finite(&f.source.opposite(), limit)?;
    let ys = f.target.opposite().downsets(limit)?;
    let table = ys
        .iter()
        .map(|u| {
            let pre: Vec<usize> = (0..f.source.len()).filter(|&x| u.contains(f.table[x])).collect();
            tgt.parse_element(&f.source.subset_id(&pre))
        })
        .collect::<Result<Vec<Element>>>()?;
    FrameHom::table(src, tgt, table)
}

/// Runs the preimage-of-compact-saturated test and the way-below test.
pub fn is_perfect_map(f: &PerfectMap, limit: usize, max_den: i64) -> Result<PerfectReport> {
    let (pre, pre_cx, wb, wb_cx) = match f {
        PerfectMap::Finite(m) => {
            if let Some((a, b)) = m.monotonicity_counterexample() {
                return Err(Error::NotContinuous(format!(
                    "{} ≤ {} but their images are not ordered",
                    m.source.label(a),
                    m.source.label(b)
                )));
            }
            // preimages of upper sets are upper, and every finite set is compact
            let mut pre_cx = None;
            for k in m.target.opposite().downsets(limit)? {
                let mask: Vec<bool> = (0..m.source.len()).map(|x| k.contains(m.table[x])).collect();
                if !m.source.is_up_closed(&mask) {
                    pre_cx = Some(format!("preimage of {{{}}} is not saturated", m.target.subset_id(k.members())));
                    break;
                }
            }
            let hom = inverse_image_hom(m, limit)?;
            let wb_cx = hom.way_below_counterexample(0).map(|(x, y)| {
                let s = hom.source();
                format!("{} ≪ {} is not preserved", s.show(&x), s.show(&y))
            });
            (pre_cx.is_none(), pre_cx, wb_cx.is_none(), wb_cx)
        }
        PerfectMap::Dint(h) => {
            let pre_cx = DintSaturated::compact_family(max_den).into_iter().find_map(|k| {
                let p = dint_preimage(h, &k);
                (!p.is_compact()).then(|| format!("preimage of {} is {}", k.show(), p.show()))
            });
            let hom = FrameHom::Dint(h.clone());
            let wb_cx = hom.way_below_counterexample(max_den).map(|(x, y)| {
                let s = hom.source();
                format!("{} ≪ {} is not preserved", s.show(&x), s.show(&y))
            });
            (pre_cx.is_none(), pre_cx, wb_cx.is_none(), wb_cx)
        }
    };
    Ok(PerfectReport { preimage_criterion: pre, way_below_criterion: wb, agree: pre == wb, counterexample: pre_cx.or(wb_cx) })
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Hasse diagram in DOT, edges pointing upward.
pub fn poset_dot(name: &str, p: &FinitePoset) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", dot_escape(name));
    let _ = writeln!(out, "  rankdir=BT;");
    for i in 0..p.len() {
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", dot_escape(p.label(i)));
    }
    for (a, b) in p.covers() {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    out
}

/// Compact saturated sets of a finite space under inclusion, as a lattice.
pub fn compact_saturated_coframe(p: &FinitePoset, limit: usize) -> Result<FiniteLattice> {
    let sets = p.opposite().downsets(limit)?;
    let labels: Vec<String> = sets.iter().map(|d| format!("{{{}}}", p.subset_id(d.members()))).collect();
    let le = sets.iter().map(|a| sets.iter().map(|b| a.is_subset(b)).collect()).collect();
    FiniteLattice::from_poset(FinitePoset::from_relation(labels, le)?)
}
