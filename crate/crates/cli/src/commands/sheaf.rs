//! Presheaves of sets, jump presheaves on `dint`, and sheaves of rational complexes.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use sck_core::frame::{Builtin, Element, Frame};
use sck_core::json::{
    complex_to_json, homology_to_json, is_jump_doc, parse_complex, parse_complex_sheaf, parse_jump, parse_set_presheaf,
};
use sck_core::order::natural_posets;
use sck_core::rational::{fmt_q, parse_q};
use sck_core::sheaf::{random_sheaf, verdier_dual, verdier_roundtrip as roundtrip, RoundtripRow};

use super::{strip_braces, usage, CliError, CmdResult};
use crate::report::Outcome;

/// Largest total dimension of the random sheaves drawn by `verdier-roundtrip`.
const RANDOM_MAX_DIM: usize = 8;

fn braced(id: &str) -> String {
    format!("{{{id}}}")
}

fn homology_table(h: &BTreeMap<String, BTreeMap<i32, usize>>) -> Value {
    Value::Object(h.iter().map(|(k, v)| (braced(k), homology_to_json(v))).collect::<Map<_, _>>())
}

pub fn excisive_check(v: &Value, limit: usize) -> CmdResult {
    if is_jump_doc(v) {
        let f = parse_jump(v)?;
        return Ok(Outcome::pass(json!({
            "space": "dint",
            "excisive": f.is_excisive(),
            "certificate": "opens form a chain, so every excision square is degenerate",
        })));
    }
    let f = parse_set_presheaf(v, limit)?;
    let values: Map<String, Value> = f.values_by_id().into_iter().map(|(k, x)| (braced(&k), json!(x))).collect();
    let cx = f.excision_counterexample();
    Ok(Outcome::verdict(json!({"values": values, "excisive": cx.is_none()}), cx))
}

fn parse_dint_open(s: &str) -> Result<Element, CliError> {
    let f = Frame::Builtin(Builtin::Dint);
    if s.contains(':') || s == "top" || s == "bot" {
        Ok(f.parse_element(s)?)
    } else {
        Ok(f.normalize(Element::Up(parse_q(s)?))?)
    }
}

pub fn sheafify(v: &Value, at: Option<&str>, limit: usize) -> CmdResult {
    if is_jump_doc(v) {
        let f = parse_jump(v)?;
        let at = at.ok_or_else(|| usage("--at is required for a jump presheaf"))?;
        let r = f.sheafify_at(&parse_dint_open(at)?)?;
        let cx = (!r.bijective).then(|| format!("the comparison at {} is not bijective", r.at));
        let payload = json!({
            "at": r.at,
            "value": r.value,
            "limit": r.limit,
            "comparison": r.comparison.iter().map(|(a, b)| vec![a, b]).collect::<Vec<_>>(),
            "bijective": r.bijective,
        });
        return Ok(Outcome::verdict(payload, cx));
    }
    let f = parse_set_presheaf(v, limit)?;
    let opens: Vec<usize> = match at {
        Some(id) => vec![f.opens().index_of(strip_braces(id))?],
        None => (0..f.opens().len()).collect(),
    };
    let mut rows = Vec::with_capacity(opens.len());
    let mut cx = None;
    for u in opens {
        let r = f.sheafify_at(u)?;
        if !r.bijective && cx.is_none() {
            cx = Some(format!("the comparison at {} is not bijective", braced(&r.open)));
        }
        rows.push(json!({
            "open": braced(&r.open),
            "value": r.value,
            "diagram": r.diagram.iter().map(|d| braced(d)).collect::<Vec<_>>(),
            "limit": r.limit,
            "comparison": r.comparison,
            "bijective": r.bijective,
        }));
    }
    Ok(Outcome::verdict(json!({"opens": rows}), cx))
}

pub fn flachsmeyer_image(v: &Value) -> CmdResult {
    let f = parse_jump(v)?;
    let r = f.flachsmeyer_image_check();
    let cx = r
        .failures
        .first()
        .map(|c| format!("the value at {c} is not the colimit of the values on the open side"));
    Ok(Outcome::verdict(json!({"holds": r.holds, "checked": r.checked, "failures": r.failures}), cx))
}

fn parse_compact(s: &str) -> Result<sck_core::Q, CliError> {
    let t = s.trim();
    let inner = match t.strip_prefix('[').and_then(|x| x.strip_suffix(']')) {
        Some(body) => {
            let (r, one) = body.split_once(',').ok_or_else(|| usage(format!("expected [r,1], found `{s}`")))?;
            if one.trim() != "1" {
                return Err(usage(format!("compact saturated sets of dint are [r,1], found `{s}`")));
            }
            r.trim()
        }
        None => t,
    };
    Ok(parse_q(inner)?)
}

pub fn ksheaf(v: &Value, at: &str, raw: bool) -> CmdResult {
    let f = parse_jump(v)?;
    let r = parse_compact(at)?;
    if raw {
        if !sck_core::rational::in_unit_interval(&r) {
            return Err(sck_core::Error::OutOfRange(fmt_q(&r)).into());
        }
        let holds = f.k_condition(&r);
        let compact = format!("[{},1]", fmt_q(&r));
        let cx = (!holds).then(|| format!("the colimit over [s,1] with s < {} does not match the value on {compact}", fmt_q(&r)));
        return Ok(Outcome::verdict(json!({"compact": compact, "mode": "raw", "holds": holds}), cx));
    }
    let rep = f.k_sheaf_check(&r)?;
    let cx = (!rep.holds).then(|| format!("the extension fails the condition at {}", rep.compact));
    Ok(Outcome::verdict(json!({"compact": rep.compact, "mode": "extension", "value": rep.fhat, "holds": rep.holds}), cx))
}

pub fn verdier(v: &Value, limit: usize) -> CmdResult {
    let f = parse_complex_sheaf(v, limit)?;
    let d = verdier_dual(&f, limit)?;
    let payload = json!({
        "sheaf": homology_table(&f.homology_by_open()),
        "dual": homology_table(&d.homology_by_open()),
        "dual_stable_excisive": d.is_stable_excisive(),
    });
    Ok(Outcome::pass(payload))
}

fn rows_json(rows: &[RoundtripRow]) -> Value {
    json!(rows
        .iter()
        .map(|r| json!({
            "open": braced(&r.open),
            "sheaf": homology_to_json(&r.sheaf),
            "double_dual": homology_to_json(&r.double_dual),
            "quasi_isomorphic": r.quasi_isomorphic,
        }))
        .collect::<Vec<_>>())
}

fn first_bad(rows: &[RoundtripRow]) -> Option<String> {
    rows.iter().find(|r| !r.ok()).map(|r| format!("the double dual differs on {}", braced(&r.open)))
}

pub fn verdier_roundtrip(doc: Option<&Value>, seed: u64, trials: usize, limit: usize) -> CmdResult {
    if let Some(v) = doc {
        let f = parse_complex_sheaf(v, limit)?;
        let rows = roundtrip(&f, limit)?;
        let cx = first_bad(&rows);
        return Ok(Outcome::verdict(json!({"rows": rows_json(&rows)}), cx));
    }
    if trials == 0 || trials > 1000 {
        return Err(usage("--trials must lie in 1..=1000"));
    }
    let spaces: Vec<_> = (1..=4).flat_map(natural_posets).collect();
    let mut out = Vec::with_capacity(trials);
    let mut cx = None;
    for i in 0..trials {
        let s = seed.wrapping_add(i as u64);
        let space = &spaces[(s % spaces.len() as u64) as usize];
        let f = random_sheaf(space, s, RANDOM_MAX_DIM, limit)?;
        let rows = roundtrip(&f, limit)?;
        let ok = rows.iter().all(RoundtripRow::ok);
        if let (false, None) = (ok, &cx) {
            cx = Some(format!("seed {s}: {}", first_bad(&rows).unwrap_or_default()));
        }
        out.push(json!({
            "seed": s,
            "points": space.len(),
            "covers": space.cover_labels().into_iter().map(|(a, b)| vec![a, b]).collect::<Vec<_>>(),
            "total_dim": f.value(f.opens().whole()).total_dim(),
            "opens": rows.len(),
            "ok": ok,
        }));
    }
    Ok(Outcome::verdict(json!({"trials": out}), cx))
}

pub fn complex_homology(v: &Value) -> CmdResult {
    let c = parse_complex(v)?;
    let h = c.homology();
    let euler: i64 = c.dims().iter().map(|(k, n)| if k % 2 == 0 { *n as i64 } else { -(*n as i64) }).sum();
    Ok(Outcome::pass(json!({
        "complex": complex_to_json(&c),
        "homology": homology_to_json(&h),
        "acyclic": c.is_acyclic(),
        "euler_characteristic": euler,
    })))
}
