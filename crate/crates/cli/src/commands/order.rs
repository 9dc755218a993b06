//! Posets, idealoids, the glued double interval, `?` and back-and-forth.

use serde_json::{json, Value};

use sck_core::frame::{Builtin, Frame, FiniteFrame};
use sck_core::idealoid::dense::{back_and_forth as run_back_and_forth, DenseHandle, DenseKind};
use sck_core::idealoid::glued::{self, Arrow, GluedPoint};
use sck_core::idealoid::{minkowski, ArrowIdealoid, Chain, SymbolicIdealoid};
use sck_core::json::{parse_idealoid, parse_poset, IdealoidDoc};
use sck_core::order::{FiniteLattice, FinitePoset};
use sck_core::rational::{fmt_q, parse_q};
use sck_core::space::poset_dot;
use sck_core::Error;

use super::{require, usage, CliError, CmdResult};
use crate::report::Outcome;
use crate::Pair;

fn poset_of(v: &Value) -> Result<FinitePoset, CliError> {
    Ok(parse_poset(v.get("poset").unwrap_or(v))?)
}

fn labels(p: &FinitePoset, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&i| p.label(i).to_string()).collect()
}

fn pair_list(pairs: &[(String, String)]) -> Value {
    json!(pairs.iter().map(|(a, b)| vec![a, b]).collect::<Vec<_>>())
}

pub fn check_poset(v: &Value) -> CmdResult {
    let p = poset_of(v)?;
    let payload = json!({
        "elements": p.labels(),
        "covers": pair_list(&p.cover_labels()),
        "size": p.len(),
        "minimal": labels(&p, &p.minimal_elements()),
        "maximal": labels(&p, &p.maximal_elements()),
        "bottom": p.bottom().map(|i| p.label(i).to_string()),
        "top": p.top().map(|i| p.label(i).to_string()),
    });
    Ok(Outcome::pass(payload).with_dot(poset_dot("poset", &p)))
}

pub fn downsets(v: &Value, limit: usize) -> CmdResult {
    let p = poset_of(v)?;
    let frame = FiniteFrame::of_downsets(&p, limit)?;
    let l = frame.lattice().poset();
    let payload = json!({
        "count": l.len(),
        "downsets": l.labels(),
        "lattice_covers": pair_list(&l.cover_labels()),
    });
    Ok(Outcome::pass(payload).with_dot(poset_dot("downsets", l)))
}

pub fn is_distributive(v: &Value) -> CmdResult {
    let p = poset_of(v)?;
    let l = FiniteLattice::from_poset(p)?;
    let cx = l.distributivity_counterexample().map(|(x, y, z)| {
        let (x, y, z) = (l.label(x), l.label(y), l.label(z));
        format!("{x} ∧ ({y} ∨ {z}) differs from ({x} ∧ {y}) ∨ ({x} ∧ {z})")
    });
    let payload = json!({"size": l.len(), "distributive": cx.is_none()});
    Ok(Outcome::verdict(payload, cx).with_dot(poset_dot("lattice", l.poset())))
}

fn is_glued(v: &Value) -> bool {
    v.get("glued").is_some()
}

fn glued_sample(v: &Value) -> Result<i64, CliError> {
    match v.get("glued").and_then(Value::as_str) {
        Some("double-interval") => {}
        other => return Err(usage(format!("unknown glued carrier {other:?}"))),
    }
    let n = v.get("sample").and_then(Value::as_i64).unwrap_or(3);
    if !(1..=64).contains(&n) {
        return Err(usage("`sample` must lie in 1..=64"));
    }
    Ok(n)
}

fn symbolic_payload(s: &SymbolicIdealoid) -> Value {
    json!({"frame": s.frame.name(), "relation": s.relation.name()})
}

fn with(mut v: Value, key: &str, x: Value) -> Value {
    v.as_object_mut().expect("payload object").insert(key.into(), x);
    v
}

pub fn idealoid_check(v: &Value, limit: usize) -> CmdResult {
    match parse_idealoid(v, false, limit)? {
        IdealoidDoc::Finite(i) => {
            let p = i.poset();
            let cx = i
                .absorption_counterexample()
                .map(|(a, b)| format!("({}, {}) is forced by absorption but missing", p.label(a), p.label(b)));
            let payload = json!({"pairs": pair_list(&i.label_pairs()), "idealoid": cx.is_none()});
            Ok(Outcome::verdict(payload, cx))
        }
        IdealoidDoc::Symbolic(s) => {
            let payload = with(symbolic_payload(&s), "idealoid", json!(true));
            Ok(Outcome::pass(with(payload, "certificate", json!("the relation absorbs the order on both sides"))))
        }
    }
}

pub fn subdivisible(v: &Value, closure: bool, limit: usize) -> CmdResult {
    if is_glued(v) {
        glued_sample(v)?;
        return Ok(Outcome::pass(json!({
            "carrier": "glued double interval",
            "relation": "strict",
            "subdivisible": true,
            "certificate": "midpoint on a line through both points",
        })));
    }
    match parse_idealoid(v, closure, limit)? {
        IdealoidDoc::Finite(i) => {
            let p = i.poset();
            let cx = i
                .subdivision_counterexample()
                .map(|(a, b)| format!("({}, {}) has no interpolant", p.label(a), p.label(b)));
            Ok(Outcome::verdict(json!({"pairs": i.len(), "subdivisible": cx.is_none()}), cx))
        }
        IdealoidDoc::Symbolic(s) => {
            let payload = with(symbolic_payload(&s), "subdivisible", json!(true));
            Ok(Outcome::pass(with(payload, "certificate", json!(s.certificate()))))
        }
    }
}

pub fn sd_core(v: &Value, closure: bool, limit: usize) -> CmdResult {
    if is_glued(v) {
        glued_sample(v)?;
        return Ok(Outcome::pass(json!({
            "carrier": "glued double interval",
            "relation": "strict",
            "core": "the whole relation",
            "certificate": "midpoint on a line through both points",
        })));
    }
    match parse_idealoid(v, closure, limit)? {
        IdealoidDoc::Finite(i) => {
            let core = i.sd_core();
            Ok(Outcome::pass(json!({
                "pairs": pair_list(&core.label_pairs()),
                "size": core.len(),
                "input_size": i.len(),
            })))
        }
        IdealoidDoc::Symbolic(s) => {
            let payload = with(symbolic_payload(&s), "core", json!("the whole relation"));
            Ok(Outcome::pass(with(payload, "certificate", json!(s.certificate()))))
        }
    }
}

fn chain_payload<T>(c: &Chain<T>, show: impl Fn(&T) -> String, valid: bool) -> Value {
    json!({
        "index": c.index.iter().map(fmt_q).collect::<Vec<_>>(),
        "values": c.values.iter().map(show).collect::<Vec<_>>(),
        "valid": valid,
    })
}

/// `NotInCore` and `NoSuccessor` are failed properties, not input errors.
fn soft_fail<T>(r: sck_core::Result<T>) -> Result<Result<T, String>, CliError> {
    match r {
        Ok(x) => Ok(Ok(x)),
        Err(e @ (Error::NotInCore(..) | Error::NoSuccessor(_))) => Ok(Err(e.to_string())),
        Err(e) => Err(e.into()),
    }
}

pub fn chain(v: &Value, pair: &Pair, depth: u32, closure: bool, limit: usize) -> CmdResult {
    if depth > 12 {
        return Err(usage("--depth is capped at 12"));
    }
    let (x, y) = (require(&pair.x, "--x")?, require(&pair.y, "--y")?);
    if is_glued(v) {
        glued_sample(v)?;
        if x.contains("->") {
            let (a, b) = (Arrow::parse(x)?, Arrow::parse(y)?);
            let (r, how) = if glued::in_sd_core(&a, &b) {
                (glued::core_chain(&a, &b, depth), "common line".to_string())
            } else {
                let how = glued::buffer(&a, &b).map(|c| format!("buffer {c}")).unwrap_or_default();
                (glued::buffer_chain(&a, &b, depth), how)
            };
            return Ok(match r {
                Ok(c) => {
                    let valid = glued::validate_arrow_chain(&c);
                    Outcome::pass(with(chain_payload(&c, Arrow::to_string, valid), "certified_by", json!(how)))
                }
                Err(e) => Outcome::fail(json!({"x": a.to_string(), "y": b.to_string()}), e.to_string()),
            });
        }
        let (a, b) = (GluedPoint::parse(x)?, GluedPoint::parse(y)?);
        if !a.lt(&b) {
            return Ok(Outcome::fail(json!({"x": a.to_string(), "y": b.to_string()}), format!("{a} < {b} fails")));
        }
        let c = sck_core::idealoid::bisect(a, b, depth, |u, w| {
            glued::interpolant(u, w).ok_or_else(|| Error::WitnessSearchFailed(format!("{u} < {w}")))
        })?;
        let valid = c.index_ok() && c.all_pairs(GluedPoint::lt);
        return Ok(Outcome::pass(chain_payload(&c, GluedPoint::to_string, valid)));
    }
    match parse_idealoid(v, closure, limit)? {
        IdealoidDoc::Finite(i) => {
            let p = i.poset();
            let (a, b) = (p.index_of(x)?, p.index_of(y)?);
            Ok(match soft_fail(i.subdivision_chain(a, b, depth))? {
                Ok(c) => Outcome::pass(chain_payload(&c, |&t| p.label(t).to_string(), i.validate_chain(&c))),
                Err(msg) => Outcome::fail(json!({"x": x, "y": y}), msg),
            })
        }
        IdealoidDoc::Symbolic(s) => {
            let f = s.frame();
            let (a, b) = (f.parse_element(x)?, f.parse_element(y)?);
            Ok(match soft_fail(s.subdivision_chain(&a, &b, depth))? {
                Ok(c) => Outcome::pass(chain_payload(&c, |e| f.show(e), s.validate_chain(&c))),
                Err(msg) => Outcome::fail(json!({"x": f.show(&a), "y": f.show(&b)}), msg),
            })
        }
    }
}

pub fn minkowski(value: &str, inverse: bool) -> CmdResult {
    let x = parse_q(value)?;
    let payload = if inverse {
        json!({"direction": "inverse", "input": fmt_q(&x), "output": fmt_q(&minkowski::inverse(&x)?)})
    } else {
        let y = minkowski::forward(&x)?;
        let cf: Vec<String> = minkowski::continued_fraction(&x).iter().map(|a| a.to_string()).collect();
        json!({"direction": "forward", "input": fmt_q(&x), "output": fmt_q(&y), "continued_fraction": cf})
    };
    Ok(Outcome::pass(payload))
}

pub fn restricted(v: &Value, ideal: Option<&str>, closure: bool, limit: usize) -> CmdResult {
    match parse_idealoid(v, closure, limit)? {
        IdealoidDoc::Finite(i) => {
            let p = i.poset();
            let Some(ideal_text) = ideal else {
                // ideals of a finite poset are principal
                let rows: Vec<Value> = (0..p.len())
                    .map(|t| {
                        let members = p.down_closure(&[t]);
                        json!({"generator": p.label(t), "restricted": i.is_restricted_ideal(&members).unwrap_or(false)})
                    })
                    .collect();
                return Ok(Outcome::pass(json!({"principal_ideals": rows})));
            };
            let members = ideal_text
                .split(';')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| p.index_of(s))
                .collect::<sck_core::Result<Vec<_>>>()?;
            i.check_ideal(&members)?;
            let mut sorted = members.clone();
            sorted.sort_unstable();
            let cx = i
                .unrestricted_member(&sorted)
                .map(|m| format!("{} has no successor inside the ideal", p.label(m)));
            let payload = json!({"ideal": labels(p, &sorted), "restricted": cx.is_none()});
            Ok(Outcome::verdict(payload, cx))
        }
        IdealoidDoc::Symbolic(s) => {
            let ideal_text = ideal.ok_or_else(|| usage("--x is required for a built-in frame"))?;
            let e = Frame::Builtin(Builtin::DintIdeals).parse_element(ideal_text)?;
            let ok = s.is_restricted_ideal(&e)?;
            let payload = with(symbolic_payload(&s), "ideal", json!(Frame::Builtin(Builtin::DintIdeals).show(&e)));
            let cx = (!ok).then(|| format!("the generator of {ideal_text} has no successor inside it"));
            Ok(Outcome::verdict(with(payload, "restricted", json!(ok)), cx))
        }
    }
}

pub fn sequentialize(v: &Value, seed: &str, steps: usize, closure: bool, limit: usize) -> CmdResult {
    if steps > 256 {
        return Err(usage("--steps is capped at 256"));
    }
    match parse_idealoid(v, closure, limit)? {
        IdealoidDoc::Finite(i) => {
            let p = i.poset();
            let s = p.index_of(seed)?;
            Ok(match soft_fail(i.sequentialize(s, steps))? {
                Ok(seq) => Outcome::pass(json!({"sequence": labels(p, &seq)})),
                Err(msg) => Outcome::fail(json!({"seed": seed}), msg),
            })
        }
        IdealoidDoc::Symbolic(si) => {
            let f = si.frame();
            let s = f.parse_element(seed)?;
            Ok(match soft_fail(si.sequentialize(&s, steps))? {
                Ok(seq) => Outcome::pass(json!({"sequence": seq.iter().map(|e| f.show(e)).collect::<Vec<_>>()})),
                Err(msg) => Outcome::fail(json!({"seed": f.show(&s)}), msg),
            })
        }
    }
}

fn glued_arrows(n: i64) -> Vec<Arrow> {
    let pts = glued::sample_points(n);
    let mut out = Vec::new();
    for a in &pts {
        for b in &pts {
            if let Ok(x) = Arrow::new(a.clone(), b.clone()) {
                out.push(x);
            }
        }
    }
    out
}

fn glued_arrow_idealoid(n: i64, pair: &Pair) -> CmdResult {
    if let (Some(x), Some(y)) = (&pair.x, &pair.y) {
        let (a, b) = (Arrow::parse(x)?, Arrow::parse(y)?);
        let member = glued::in_arrow_idealoid(&a, &b);
        let core = glued::in_sd_core(&a, &b);
        let payload = json!({
            "x": a.to_string(),
            "y": b.to_string(),
            "in_arrow_idealoid": member,
            "in_sd_core": core,
            "interpolant": glued::arrow_interpolant(&a, &b).map(|z| z.to_string()),
            "buffer": glued::buffer(&a, &b).map(|c| c.to_string()),
        });
        let cx = match (member, core) {
            (false, _) => Some(format!("{a} -> {b} is not in the arrow idealoid")),
            (true, false) => Some(format!("{a} -> {b} is in the arrow idealoid but not in its subdivisible core")),
            _ => None,
        };
        return Ok(Outcome::verdict(payload, cx));
    }
    let arrows = glued_arrows(n);
    let mut members = 0usize;
    let mut core = 0usize;
    let mut outside: Vec<String> = Vec::new();
    for a in &arrows {
        for b in &arrows {
            if glued::in_arrow_idealoid(a, b) {
                members += 1;
                if glued::in_sd_core(a, b) {
                    core += 1;
                } else {
                    outside.push(format!("{a} -> {b}"));
                }
            }
        }
    }
    let payload = json!({
        "sample": n,
        "points": glued::sample_points(n).iter().map(GluedPoint::to_string).collect::<Vec<_>>(),
        "arrows": arrows.len(),
        "pairs": members,
        "core_pairs": core,
        "outside_core": outside.len(),
    });
    let cx = outside.first().map(|s| format!("{s} is in the arrow idealoid but not in its subdivisible core"));
    Ok(Outcome::verdict(payload, cx))
}

fn parse_finite_arrow(p: &FinitePoset, s: &str) -> Result<(usize, usize), CliError> {
    let (a, b) = s.split_once("->").ok_or_else(|| usage(format!("not an arrow: `{s}`")))?;
    Ok((p.index_of(a.trim())?, p.index_of(b.trim())?))
}

pub fn arrow_idealoid(v: &Value, pair: &Pair, closure: bool, limit: usize) -> CmdResult {
    if is_glued(v) {
        return glued_arrow_idealoid(glued_sample(v)?, pair);
    }
    let base = match parse_idealoid(v, closure, limit)? {
        IdealoidDoc::Finite(i) => i,
        IdealoidDoc::Symbolic(s) => {
            return Err(usage(format!("arrow idealoids need a finite poset, not {}", s.frame.name())))
        }
    };
    let ar = ArrowIdealoid::new(&base);
    let ap = ar.idealoid.poset().clone();
    if let (Some(x), Some(y)) = (&pair.x, &pair.y) {
        let p = base.poset();
        let (xa, ya) = (parse_finite_arrow(p, x)?, parse_finite_arrow(p, y)?);
        let idx = |a: (usize, usize)| {
            ar.arrow_index(a.0, a.1).ok_or_else(|| usage(format!("{} -> {} is not an arrow", p.label(a.0), p.label(a.1))))
        };
        let (i, j) = (idx(xa)?, idx(ya)?);
        let member = ar.idealoid.contains(i, j);
        let in_core = ar.idealoid.sd_core().contains(i, j);
        let payload = json!({
            "x": ap.label(i),
            "y": ap.label(j),
            "in_arrow_idealoid": member,
            "in_sd_core": in_core,
            "interpolant": ar.idealoid.interpolant(i, j).map(|k| ap.label(k).to_string()),
            "buffer": ar.buffer(xa, ya).map(|c| p.label(c).to_string()),
        });
        let cx = match (member, in_core) {
            (false, _) => Some(format!("{} -> {} is not in the arrow idealoid", ap.label(i), ap.label(j))),
            (true, false) => Some(format!("{} -> {} is not in the subdivisible core", ap.label(i), ap.label(j))),
            _ => None,
        };
        return Ok(Outcome::verdict(payload, cx));
    }
    let cx = ar
        .idealoid
        .subdivision_counterexample()
        .map(|(a, b)| format!("{} -> {} has no interpolant", ap.label(a), ap.label(b)));
    let payload = json!({
        "arrows": ap.len(),
        "pairs": ar.idealoid.len(),
        "core_pairs": ar.idealoid.sd_core().len(),
        "subdivisible": cx.is_none(),
    });
    Ok(Outcome::verdict(payload, cx))
}

fn parse_handle(s: &str) -> Result<DenseHandle, CliError> {
    let bad = || usage(format!("dense order handles look like `dyadic:[0,1]` or `rational:(0,1)`, not `{s}`"));
    let (kind, interval) = s.trim().split_once(':').ok_or_else(bad)?;
    let kind = match kind {
        "dyadic" => DenseKind::Dyadic,
        "rational" => DenseKind::Rational,
        _ => return Err(bad()),
    };
    let interval = interval.trim();
    let lower_closed = match interval.chars().next() {
        Some('[') => true,
        Some('(') => false,
        _ => return Err(bad()),
    };
    let upper_closed = match interval.chars().last() {
        Some(']') => true,
        Some(')') => false,
        _ => return Err(bad()),
    };
    if interval[1..interval.len() - 1].replace(' ', "") != "0,1" {
        return Err(bad());
    }
    Ok(DenseHandle { kind, lower_closed, upper_closed })
}

pub fn back_and_forth(x: &str, y: &str, steps: usize) -> CmdResult {
    if steps > 512 {
        return Err(usage("--steps is capped at 512"));
    }
    let (a, b) = (parse_handle(x)?, parse_handle(y)?);
    let iso = run_back_and_forth(&a, &b, steps)?;
    let pairs = iso.pairs();
    let consistent = iso.is_consistent();
    let mut payload = json!({
        "source": a.to_string(),
        "target": b.to_string(),
        "pairs": pairs.iter().map(|(p, q)| vec![fmt_q(p), fmt_q(q)]).collect::<Vec<_>>(),
        "consistent": consistent,
    });
    let mut cx = (!consistent).then(|| "the partial map is not order-preserving".to_string());
    if a.kind == DenseKind::Dyadic && b.kind == DenseKind::Rational {
        let mut agrees = true;
        for (p, q) in &pairs {
            if minkowski::inverse(p)? != *q {
                agrees = false;
                cx.get_or_insert_with(|| format!("{} ↦ {} differs from the inverse question-mark value", fmt_q(p), fmt_q(q)));
            }
        }
        payload = with(payload, "agrees_with_minkowski", json!(agrees));
    }
    Ok(Outcome::verdict(payload, cx))
}
