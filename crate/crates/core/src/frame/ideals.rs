//! Frames of ideals: the Flachsmeyer construction, its section `y ↦ {x : x ≪ y}`,
//! the Banaschewski–Mulvey compactification and the very Schwartz subframe.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::frame::{compact_cover, Builtin, ContinuityReport, Cut, Element, FiniteFrame, Frame};
use crate::idealoid::RelationKind;
use crate::order::FiniteLattice;

#[derive(Clone, Debug)]
pub struct FlachsmeyerResult {
    pub frame: Frame,
    /// Ideal classification of the result.
    pub classification: Vec<String>,
    /// Principal embedding `x ↦ ↓x`, as display pairs on sample elements.
    pub principal: Vec<(String, String)>,
}

/// The frame of ideals. Ideals of a finite lattice are principal, so the Tier-1
/// result is a relabelled copy; `dint` gets its cut classification and every ideal of
/// `cofinite` is principal (a finite set of least size in the ideal divides all others).
pub fn flachsmeyer(f: &Frame) -> Result<FlachsmeyerResult> {
    match f {
        Frame::Finite(ff) => {
            let lattice = ff.lattice().relabel(|l| format!("principal({l})"))?;
            let out = Frame::Finite(FiniteFrame::new(lattice)?);
            let pairs: Vec<(String, String)> =
                f.sample(0).iter().map(|x| (f.show(x), out.show(x))).collect();
            Ok(FlachsmeyerResult {
                frame: out,
                classification: vec!["principal(x) for every element x".into()],
                principal: pairs,
            })
        }
        Frame::Builtin(Builtin::Dint) => {
            let out = Frame::Builtin(Builtin::DintIdeals);
            let principal = f
                .sample(4)
                .iter()
                .map(|x| {
                    let img = match x {
                        Element::Up(r) => Element::Cut(Cut::Closed(r.clone())),
                        e => e.clone(),
                    };
                    (f.show(x), out.show(&img))
                })
                .collect();
            Ok(FlachsmeyerResult {
                frame: out,
                classification: vec![
                    "bot = {bot}".into(),
                    "open:r = {bot} ∪ {up:q : q > r}, r in [0,1)".into(),
                    "closed:r = {bot} ∪ {up:q : q ≥ r}, r in [0,1)".into(),
                    "top = all elements".into(),
                ],
                principal,
            })
        }
        Frame::Builtin(Builtin::Cofinite) => Ok(FlachsmeyerResult {
            frame: f.clone(),
            classification: vec!["principal(x) for every element x".into()],
            principal: f.sample(3).iter().map(|x| (f.show(x), f.show(x))).collect(),
        }),
        Frame::Builtin(b) => Err(Error::NoClassification(b.name().into())),
    }
}

/// `y ↦ {x : x ≪ y}` as an element of the Flachsmeyer frame.
pub fn section_map(f: &Frame, y: &Element) -> Result<Element> {
    match (f, y) {
        (Frame::Finite(_), e) => Ok(e.clone()),
        (Frame::Builtin(Builtin::Dint), Element::Up(q)) => Ok(Element::Cut(Cut::Open(q.clone()))),
        (Frame::Builtin(Builtin::Dint | Builtin::Cofinite), e) => Ok(e.clone()),
        (Frame::Builtin(b), _) => Err(Error::NoClassification(b.name().into())),
    }
}

/// Join of the ideal, back in the original frame.
pub fn ideal_join(f: &Frame, ideal: &Element) -> Result<Element> {
    match (f, ideal) {
        (Frame::Finite(_), e) => Ok(e.clone()),
        (Frame::Builtin(Builtin::Dint), Element::Cut(Cut::Open(r) | Cut::Closed(r))) => Ok(Element::Up(r.clone())),
        (Frame::Builtin(Builtin::Dint | Builtin::Cofinite), e) => Ok(e.clone()),
        (Frame::Builtin(b), _) => Err(Error::NoClassification(b.name().into())),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SectionReport {
    pub images: Vec<(String, String)>,
    pub retract: bool,
    pub preserves_meets: bool,
    pub preserves_joins: bool,
}

pub fn flachsmeyer_section(f: &Frame, max_den: i64) -> Result<SectionReport> {
    let c = f.is_stably_continuous();
    if !c.stably_continuous {
        return Err(Error::NotStablyContinuous(c.counterexample.unwrap_or_default()));
    }
    let g = flachsmeyer(f)?.frame;
    let xs = f.sample(max_den);
    let mut images = Vec::new();
    let mut retract = true;
    for x in &xs {
        let s = section_map(f, x)?;
        retract &= ideal_join(f, &s)? == *x;
        images.push((f.show(x), g.show(&s)));
    }
    let mut preserves_meets = true;
    let mut preserves_joins = true;
    for x in &xs {
        for y in &xs {
            let (sx, sy) = (section_map(f, x)?, section_map(f, y)?);
            preserves_meets &= section_map(f, &f.meet(x, y))? == g.meet(&sx, &sy);
            preserves_joins &= section_map(f, &f.join(x, y))? == g.join(&sx, &sy);
        }
    }
    Ok(SectionReport { images, retract, preserves_meets, preserves_joins })
}

#[derive(Clone, Debug)]
pub struct CompactifyResult {
    pub frame: Frame,
    pub relation: RelationKind,
    /// Restricted ideals of the input, paired with the element they become.
    pub generators: Vec<(String, String)>,
}

/// The frame of ideals restricted along the subdivisible core of `≺` or `≪`.
pub fn bm_compactify(f: &Frame, relation: RelationKind) -> Result<CompactifyResult> {
    match f {
        Frame::Finite(ff) => {
            // an ideal ↓t is restricted along an idealoid R iff t R t
            let core = ff.relation_idealoid(relation).sd_core();
            let keep: Vec<usize> = (0..ff.len()).filter(|&t| core.contains(t, t)).collect();
            let sub = ff.lattice().poset().restrict(&keep);
            let frame = Frame::Finite(FiniteFrame::new(FiniteLattice::from_poset(sub)?)?);
            let generators = keep
                .iter()
                .map(|&t| {
                    let l = ff.lattice().label(t);
                    (format!("principal({l})"), l.to_string())
                })
                .collect();
            Ok(CompactifyResult { frame, relation, generators })
        }
        Frame::Builtin(b) => match relation {
            RelationKind::RatherBelow => {
                // x ≺ y with x ≠ ⊥ forces y = ⊤, so a restricted ideal holding anything
                // above ⊥ holds ⊤
                let two = FiniteFrame::two("ideal:bot", "ideal:all");
                Ok(CompactifyResult {
                    frame: Frame::Finite(two),
                    relation,
                    generators: vec![("{bot}".into(), "ideal:bot".into()), ("all".into(), "ideal:all".into())],
                })
            }
            RelationKind::WayBelow => match b {
                Builtin::Dint => Ok(CompactifyResult {
                    frame: f.clone(),
                    relation,
                    generators: vec![
                        ("{bot}".into(), "bot".into()),
                        ("open:r".into(), "up:r".into()),
                        ("all".into(), "top".into()),
                    ],
                }),
                Builtin::DintOp => Ok(CompactifyResult {
                    frame: f.clone(),
                    relation,
                    generators: vec![
                        ("{bot}".into(), "bot".into()),
                        ("{down:s : s < r}".into(), "down:r".into()),
                        ("all".into(), "top".into()),
                    ],
                }),
                Builtin::Cofinite => Ok(CompactifyResult {
                    frame: f.clone(),
                    relation,
                    generators: vec![("principal(x)".into(), "x".into())],
                }),
                Builtin::DintIdeals => Err(Error::NoClassification(b.name().into())),
            },
            RelationKind::Order => Err(Error::TierUnsupported("compactification along the order".into())),
        },
    }
}

#[derive(Clone, Debug)]
pub struct VscReport {
    pub frame: Frame,
    pub members: Vec<Element>,
    pub whole_frame: bool,
    pub closed_under_meets: bool,
    pub closed_under_joins: bool,
    /// Each member with a restricted ideal joining to it.
    pub witnesses: Vec<(String, String)>,
    pub continuity: ContinuityReport,
}

/// Elements that are joins of ideals restricted along the subdivisible core of `≪`.
pub fn very_schwartz_subframe(f: &Frame, max_den: i64) -> Result<VscReport> {
    let (frame, members, whole, witnesses) = match f {
        Frame::Finite(ff) => {
            let core = ff.relation_idealoid(RelationKind::WayBelow).sd_core();
            let keep: Vec<usize> = (0..ff.len()).filter(|&t| core.contains(t, t)).collect();
            let whole = keep.len() == ff.len();
            let witnesses = keep
                .iter()
                .map(|&t| (ff.lattice().label(t).to_string(), format!("principal({})", ff.lattice().label(t))))
                .collect();
            let sub = if whole {
                f.clone()
            } else {
                let p = ff.lattice().poset().restrict(&keep);
                Frame::Finite(FiniteFrame::new(FiniteLattice::from_poset(p)?)?)
            };
            (sub, keep.into_iter().map(Element::Index).collect::<Vec<_>>(), whole, witnesses)
        }
        Frame::Builtin(b) => {
            let xs = f.sample(max_den);
            let witnesses = xs
                .iter()
                .map(|x| {
                    let w = match (b, x) {
                        (_, Element::Bot) => "{bot}".to_string(),
                        (_, Element::Top) => "all".to_string(),
                        (Builtin::Dint, Element::Up(q)) => f.show(&Element::Cut(Cut::Open(q.clone()))),
                        (Builtin::DintOp, Element::Down(r)) => format!("{{down:s : s < {}}}", crate::rational::fmt_q(r)),
                        (Builtin::Cofinite, e) => format!("principal({})", f.show(e)),
                        (Builtin::DintIdeals, e) => {
                            format!("compacts below {} (up to {})", f.show(e), f.show(&compact_cover(e)))
                        }
                        (_, e) => f.show(e),
                    };
                    (f.show(x), w)
                })
                .collect();
            (f.clone(), xs, true, witnesses)
        }
    };
    let mut meets = true;
    let mut joins = true;
    for x in &members {
        for y in &members {
            meets &= members.contains(&f.meet(x, y));
            joins &= members.contains(&f.join(x, y));
        }
    }
    let continuity = frame.is_stably_continuous();
    Ok(VscReport {
        frame,
        members,
        whole_frame: whole,
        closed_under_meets: meets,
        closed_under_joins: joins,
        witnesses,
        continuity,
    })
}
