//! Frames and stably compact spaces.

use serde_json::{json, Value};

use sck_core::frame::{bm_compactify, flachsmeyer_section, very_schwartz_subframe, Builtin, Element, Frame};
use sck_core::idealoid::RelationKind;
use sck_core::json::{parse_frame, parse_perfect_map, parse_space, poset_to_json, space_to_json};
use sck_core::space::{compact_saturated_coframe, is_perfect_map, poset_dot, SpaceDescriptor};

use super::{usage, CliError, CmdResult, SAMPLE_DEN};
use crate::report::Outcome;
use crate::Pair;

fn elements(f: &Frame) -> Vec<String> {
    f.sample(SAMPLE_DEN).iter().map(|e| f.show(e)).collect()
}

fn summary(f: &Frame) -> Value {
    match f {
        Frame::Finite(ff) => json!({"name": f.name(), "size": ff.len(), "elements": elements(f)}),
        Frame::Builtin(_) => json!({"name": f.name(), "sample": elements(f)}),
    }
}

fn dot_of(name: &str, f: &Frame) -> Option<String> {
    f.as_finite().map(|ff| poset_dot(name, ff.lattice().poset()))
}

fn attach_dot(o: Outcome, dot: Option<String>) -> Outcome {
    match dot {
        Some(d) => o.with_dot(d),
        None => o,
    }
}

fn elems(f: &Frame, pair: &Pair) -> Result<Option<(Element, Element)>, CliError> {
    match (&pair.x, &pair.y) {
        (Some(x), Some(y)) => Ok(Some((f.parse_element(x)?, f.parse_element(y)?))),
        (None, None) => Ok(None),
        _ => Err(usage("--x and --y go together")),
    }
}

pub fn way_below(v: &Value, pair: &Pair, limit: usize) -> CmdResult {
    let f = parse_frame(v, limit)?;
    match elems(&f, pair)? {
        Some((x, y)) => {
            let holds = f.way_below(&x, &y);
            let payload = json!({"frame": f.name(), "x": f.show(&x), "y": f.show(&y), "way_below": holds});
            let cx = (!holds).then(|| format!("{} is not way below {}", f.show(&x), f.show(&y)));
            Ok(Outcome::verdict(payload, cx))
        }
        None if f.as_finite().is_some() => {
            let xs = f.sample(0);
            let pairs: Vec<Vec<String>> = xs
                .iter()
                .flat_map(|x| xs.iter().map(move |y| (x, y)))
                .filter(|(x, y)| f.way_below(x, y))
                .map(|(x, y)| vec![f.show(x), f.show(y)])
                .collect();
            let coincides = xs.iter().all(|x| xs.iter().all(|y| f.way_below(x, y) == f.le(x, y)));
            Ok(Outcome::pass(json!({"frame": f.name(), "pairs": pairs, "coincides_with_order": coincides})))
        }
        None => Err(usage("--x and --y are required for a built-in frame")),
    }
}

pub fn rather_below(v: &Value, pair: &Pair, limit: usize) -> CmdResult {
    let f = parse_frame(v, limit)?;
    match elems(&f, pair)? {
        Some((x, y)) => {
            let w = f.rather_below(&x, &y);
            let payload = json!({
                "frame": f.name(),
                "x": f.show(&x),
                "y": f.show(&y),
                "rather_below": w.is_some(),
                "witness": w.as_ref().map(|e| f.show(e)),
            });
            let cx = w.is_none().then(|| format!("no r with {} ∧ r = bot and {} ∨ r = top", f.show(&x), f.show(&y)));
            Ok(Outcome::verdict(payload, cx))
        }
        None if f.as_finite().is_some() => {
            let xs = f.sample(0);
            let mut pairs = Vec::new();
            for x in &xs {
                for y in &xs {
                    if let Some(w) = f.rather_below(x, y) {
                        pairs.push(vec![f.show(x), f.show(y), f.show(&w)]);
                    }
                }
            }
            Ok(Outcome::pass(json!({"frame": f.name(), "pairs_with_witness": pairs})))
        }
        None => Err(usage("--x and --y are required for a built-in frame")),
    }
}

pub fn continuous_check(v: &Value, limit: usize) -> CmdResult {
    let f = parse_frame(v, limit)?;
    let r = f.is_stably_continuous();
    let payload = json!({
        "frame": f.name(),
        "stably_continuous": r.stably_continuous,
        "mode": r.mode,
        "certificate": r.certificate,
    });
    Ok(Outcome::verdict(payload, r.counterexample))
}

pub fn section(v: &Value, limit: usize) -> CmdResult {
    let f = parse_frame(v, limit)?;
    let r = flachsmeyer_section(&f, SAMPLE_DEN)?;
    let payload = json!({
        "frame": f.name(),
        "images": r.images.iter().map(|(a, b)| vec![a, b]).collect::<Vec<_>>(),
        "retract": r.retract,
        "preserves_meets": r.preserves_meets,
        "preserves_joins": r.preserves_joins,
    });
    let cx = if !r.retract {
        Some("the join of the image differs from the input".to_string())
    } else if !r.preserves_meets {
        Some("binary meets are not preserved".to_string())
    } else if !r.preserves_joins {
        Some("binary joins are not preserved".to_string())
    } else {
        None
    };
    Ok(Outcome::verdict(payload, cx))
}

pub fn flachsmeyer(v: &Value, limit: usize) -> CmdResult {
    let f = parse_frame(v, limit)?;
    let r = sck_core::frame::flachsmeyer(&f)?;
    let payload = json!({
        "input": f.name(),
        "ideals": summary(&r.frame),
        "classification": r.classification,
        "principal": r.principal.iter().map(|(a, b)| vec![a, b]).collect::<Vec<_>>(),
    });
    Ok(attach_dot(Outcome::pass(payload), dot_of("ideals", &r.frame)))
}

pub fn regular_check(v: &Value, limit: usize) -> CmdResult {
    let f = parse_frame(v, limit)?;
    let cx = f
        .regularity_counterexample()
        .map(|e| format!("{} is not the join of the elements rather below it", f.show(&e)));
    Ok(Outcome::verdict(json!({"frame": f.name(), "regular": cx.is_none()}), cx))
}

pub fn compactify(v: &Value, relation: &str, limit: usize) -> CmdResult {
    let kind = RelationKind::parse(relation)?;
    if kind == RelationKind::Order {
        return Err(usage("--relation must be rather-below or way-below"));
    }
    let f = parse_frame(v, limit)?;
    let r = bm_compactify(&f, kind)?;
    let g = &r.frame;
    let payload = json!({
        "input": f.name(),
        "relation": kind.name(),
        "frame": summary(g),
        "generators": r.generators.iter().map(|(a, b)| vec![a, b]).collect::<Vec<_>>(),
        "regular": g.is_regular(),
        "compact_top": g.has_compact_top(),
    });
    Ok(attach_dot(Outcome::pass(payload), dot_of("compactification", g)))
}

pub fn vsc(v: &Value, limit: usize) -> CmdResult {
    let f = parse_frame(v, limit)?;
    let r = very_schwartz_subframe(&f, SAMPLE_DEN)?;
    let payload = json!({
        "input": f.name(),
        "members": r.members.iter().map(|e| f.show(e)).collect::<Vec<_>>(),
        "whole_frame": r.whole_frame,
        "closed_under_meets": r.closed_under_meets,
        "closed_under_joins": r.closed_under_joins,
        "witnesses": r.witnesses.iter().map(|(a, b)| vec![a, b]).collect::<Vec<_>>(),
        "stably_continuous": r.continuity.stably_continuous,
    });
    let cx = r.continuity.counterexample.clone().or_else(|| {
        (!r.closed_under_meets || !r.closed_under_joins).then(|| "members are not closed under finite meets and joins".into())
    });
    Ok(attach_dot(Outcome::verdict(payload, cx), dot_of("subframe", &r.frame)))
}

fn space_dot(name: &str, s: &SpaceDescriptor) -> Option<String> {
    match s {
        SpaceDescriptor::Finite(p) => Some(poset_dot(name, p)),
        SpaceDescriptor::Builtin(_) => None,
    }
}

pub fn dual(v: &Value) -> CmdResult {
    let s = parse_space(v)?;
    let d = s.de_groot_dual()?;
    let involution = d.de_groot_dual()? == s;
    let payload = json!({"input": space_to_json(&s), "dual": space_to_json(&d), "involution": involution});
    let cx = (!involution).then(|| "the dual of the dual differs from the input".to_string());
    Ok(attach_dot(Outcome::verdict(payload, cx), space_dot("dual", &d)))
}

pub fn patch(v: &Value) -> CmdResult {
    let s = parse_space(v)?;
    let r = s.patch();
    Ok(Outcome::pass(json!({
        "space": s.name(),
        "topology": r.topology,
        "basis": r.basis,
        "discrete": r.discrete,
    })))
}

pub fn nachbin(v: &Value) -> CmdResult {
    let s = parse_space(v)?;
    let n = s.to_nachbin()?;
    let back = SpaceDescriptor::from_nachbin(&n);
    let round_trip = back == s;
    let payload = json!({"order": poset_to_json(&n.order), "round_trip": round_trip});
    let cx = (!round_trip).then(|| "the round trip changes the space".to_string());
    Ok(Outcome::verdict(payload, cx).with_dot(poset_dot("nachbin", &n.order)))
}

pub fn perfect_check(v: &Value, limit: usize) -> CmdResult {
    let m = parse_perfect_map(v)?;
    let r = is_perfect_map(&m, limit, SAMPLE_DEN)?;
    let payload = json!({
        "preimage_criterion": r.preimage_criterion,
        "way_below_criterion": r.way_below_criterion,
        "agree": r.agree,
        "perfect": r.preimage_criterion && r.way_below_criterion,
    });
    let cx = if r.agree { r.counterexample } else {
        Some(format!("the criteria disagree: {}", r.counterexample.unwrap_or_default()))
    };
    Ok(Outcome::verdict(payload, cx))
}

pub fn ksat(v: &Value, limit: usize) -> CmdResult {
    let s = parse_space(v)?;
    match &s {
        SpaceDescriptor::Finite(p) => {
            let sets: Vec<String> = s
                .compact_saturated_sets(limit)?
                .iter()
                .map(|k| format!("{{{}}}", p.subset_id(k)))
                .collect();
            let coframe = compact_saturated_coframe(p, limit)?;
            let payload = json!({"space": s.name(), "count": sets.len(), "compact_saturated": sets});
            Ok(Outcome::pass(payload).with_dot(poset_dot("compact saturated", coframe.poset())))
        }
        SpaceDescriptor::Builtin(Builtin::Dint) => Ok(Outcome::pass(json!({
            "space": s.name(),
            "compact_saturated": ["∅", "[r,1] for r in [0,1]"],
            "not_compact": ["(r,1] for r in [0,1)"],
        }))),
        SpaceDescriptor::Builtin(Builtin::DintOp) => Ok(Outcome::pass(json!({
            "space": s.name(),
            "compact_saturated": ["∅", "[0,r] for r in [0,1]"],
            "not_compact": ["[0,r) for r in (0,1]"],
        }))),
        SpaceDescriptor::Builtin(b) => Err(CliError(format!("no compact saturated family registered for {}", b.name()))),
    }
}
