//! JSON instance documents.
//!
//! Every loader takes a parsed [`serde_json::Value`] so callers decide how files are read.

use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::frame::{Builtin, DintHom, Frame};
use crate::idealoid::{Idealoid, RelationKind, SymbolicIdealoid};
use crate::order::{FinitePoset, MonotoneMap};
use crate::rational::{fmt_q, parse_q, Q};
use crate::sheaf::{ComplexSheaf, JumpPresheaf, Mat, RationalComplex, SetPresheaf, Side};
use crate::space::{PerfectMap, SpaceDescriptor};

fn err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| err(format!("missing field `{key}`")))
}

fn string(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        _ => Err(err(format!("expected a string, found {v}"))),
    }
}

fn strings(v: &Value) -> Result<Vec<String>> {
    v.as_array().ok_or_else(|| err(format!("expected an array, found {v}")))?.iter().map(string).collect()
}

fn pairs(v: &Value) -> Result<Vec<(String, String)>> {
    v.as_array()
        .ok_or_else(|| err("expected an array of pairs"))?
        .iter()
        .map(|p| match p.as_array().map(Vec::as_slice) {
            Some([a, b]) => Ok((string(a)?, string(b)?)),
            _ => Err(err(format!("expected a pair, found {p}"))),
        })
        .collect()
}

fn string_map(v: &Value) -> Result<BTreeMap<String, String>> {
    v.as_object()
        .ok_or_else(|| err(format!("expected an object, found {v}")))?
        .iter()
        .map(|(k, x)| Ok((k.clone(), string(x)?)))
        .collect()
}

fn rational(v: &Value) -> Result<Q> {
    parse_q(&string(v)?)
}

pub fn parse_poset(v: &Value) -> Result<FinitePoset> {
    let labels = strings(field(v, "elements")?)?;
    let covers = match v.get("covers") {
        Some(c) => pairs(c)?,
        None => Vec::new(),
    };
    FinitePoset::build(&labels, &covers)
}

pub fn poset_to_json(p: &FinitePoset) -> Value {
    json!({
        "elements": p.labels(),
        "covers": p.cover_labels().into_iter().map(|(a, b)| vec![a, b]).collect::<Vec<_>>(),
    })
}

fn builtin_name(v: &Value) -> Option<Result<Builtin>> {
    match v {
        Value::String(s) => Some(Builtin::parse(s)),
        Value::Object(o) if o.get("tier").and_then(Value::as_str) == Some("builtin") => {
            Some(o.get("name").and_then(Value::as_str).ok_or_else(|| err("builtin without a name")).and_then(Builtin::parse))
        }
        _ => None,
    }
}

fn finite_poset_of(v: &Value) -> Result<FinitePoset> {
    match v.get("poset") {
        Some(p) => parse_poset(p),
        None => parse_poset(v),
    }
}

fn is_space_view(v: &Value) -> bool {
    v.get("view").and_then(Value::as_str) == Some("space")
}

/// Frame documents. A finite frame is the downset lattice of its poset; with
/// `"view": "space"` it is the frame of opens (upper sets) of the space instead.
pub fn parse_frame(v: &Value, limit: usize) -> Result<Frame> {
    if let Some(b) = builtin_name(v) {
        return Ok(Frame::Builtin(b?));
    }
    let p = finite_poset_of(v)?;
    if is_space_view(v) {
        SpaceDescriptor::Finite(p).frame(limit)
    } else {
        Frame::finite(&p, limit)
    }
}

pub fn parse_space(v: &Value) -> Result<SpaceDescriptor> {
    if let Some(b) = builtin_name(v) {
        return Ok(SpaceDescriptor::Builtin(b?));
    }
    Ok(SpaceDescriptor::Finite(finite_poset_of(v)?))
}

pub fn space_to_json(s: &SpaceDescriptor) -> Value {
    match s {
        SpaceDescriptor::Finite(p) => json!({"tier": "finite", "view": "space", "poset": poset_to_json(p)}),
        SpaceDescriptor::Builtin(b) => json!({"tier": "builtin", "view": "space", "name": b.name()}),
    }
}

/// An idealoid on a finite poset or a named relation on a built-in frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealoidDoc {
    Finite(Idealoid),
    Symbolic(SymbolicIdealoid),
}

/// `{"poset": ..., "pairs": [...]}`, `{"poset": ..., "relation": "strict" | "order"}`,
/// `{"frame": <frame doc>, "relation": ...}` or `{"poset": "dint", "relation": ...}`.
/// Absorption closure is applied unless `closure` is false.
pub fn parse_idealoid(v: &Value, closure: bool, limit: usize) -> Result<IdealoidDoc> {
    let relation = v.get("relation").map(string).transpose()?;
    let carrier = v.get("poset").or_else(|| v.get("frame")).ok_or_else(|| err("missing field `poset`"))?;
    if let Some(b) = builtin_name(carrier) {
        let kind = RelationKind::parse(relation.as_deref().unwrap_or("way-below"))?;
        return Ok(IdealoidDoc::Symbolic(SymbolicIdealoid::new(b?, kind)));
    }
    if v.get("frame").is_some() {
        let f = parse_frame(carrier, limit)?;
        let kind = RelationKind::parse(relation.as_deref().unwrap_or("way-below"))?;
        let ff = f.as_finite().expect("non-builtin frames are finite");
        return Ok(IdealoidDoc::Finite(ff.relation_idealoid(kind)));
    }
    let p = parse_poset(carrier)?;
    let i = match (v.get("pairs"), relation.as_deref()) {
        (Some(ps), _) => Idealoid::from_labels(p, &pairs(ps)?)?,
        (None, Some("strict")) => Idealoid::strict(&p),
        (None, Some("order" | "le" | "full")) => Idealoid::full(&p),
        (None, Some("empty")) => Idealoid::empty(&p),
        (None, other) => return Err(err(format!("no pairs and unknown relation {other:?}"))),
    };
    Ok(IdealoidDoc::Finite(if closure { i.absorption_closure() } else { i }))
}

pub fn parse_set_presheaf(v: &Value, limit: usize) -> Result<SetPresheaf> {
    let space = match parse_space(field(v, "space")?)? {
        SpaceDescriptor::Finite(p) => p,
        SpaceDescriptor::Builtin(b) => return Err(Error::TierUnsupported(format!("{b}: use a jump presheaf"))),
    };
    let values: BTreeMap<String, Vec<String>> = field(v, "values")?
        .as_object()
        .ok_or_else(|| err("`values` must be an object"))?
        .iter()
        .map(|(k, x)| Ok((k.clone(), strings(x)?)))
        .collect::<Result<_>>()?;
    let restrictions = match v.get("restrictions") {
        Some(r) => r
            .as_object()
            .ok_or_else(|| err("`restrictions` must be an object"))?
            .iter()
            .map(|(k, x)| {
                let (a, b) = k.split_once('>').ok_or_else(|| err(format!("restriction key `{k}` lacks `>`")))?;
                Ok(((a.to_string(), b.to_string()), string_map(x)?))
            })
            .collect::<Result<_>>()?,
        None => BTreeMap::new(),
    };
    SetPresheaf::new(&space, &values, &restrictions, limit)
}

pub fn is_jump_doc(v: &Value) -> bool {
    v.get("thresholds").is_some()
}

pub fn parse_jump(v: &Value) -> Result<JumpPresheaf> {
    let thresholds = field(v, "thresholds")?
        .as_array()
        .ok_or_else(|| err("`thresholds` must be an array"))?
        .iter()
        .map(rational)
        .collect::<Result<Vec<Q>>>()?;
    let sides = match v.get("sides") {
        Some(s) => strings(s)?.iter().map(|x| Side::parse(x)).collect::<Result<Vec<_>>>()?,
        None => vec![Side::Left; thresholds.len()],
    };
    let values = field(v, "values")?
        .as_array()
        .ok_or_else(|| err("`values` must be an array"))?
        .iter()
        .map(strings)
        .collect::<Result<Vec<_>>>()?;
    let maps = match v.get("maps") {
        Some(m) => m.as_array().ok_or_else(|| err("`maps` must be an array"))?.iter().map(string_map).collect::<Result<Vec<_>>>()?,
        None => Vec::new(),
    };
    let top = match v.get("top") {
        Some(t) => Some((strings(t)?, string_map(field(v, "top_map")?)?)),
        None => None,
    };
    JumpPresheaf::new(thresholds, sides, values, &maps, top)
}

pub fn jump_to_json(f: &JumpPresheaf) -> Value {
    json!({
        "thresholds": f.thresholds().iter().map(fmt_q).collect::<Vec<_>>(),
        "sides": f.sides(),
        "values": f.segments(),
        "top": f.top(),
    })
}

pub fn parse_matrix(v: &Value, rows: usize, cols: usize) -> Result<Mat> {
    let data = v
        .as_array()
        .ok_or_else(|| err("a matrix is a list of rows"))?
        .iter()
        .map(|r| r.as_array().ok_or_else(|| err("a matrix row is a list"))?.iter().map(rational).collect::<Result<Vec<Q>>>())
        .collect::<Result<Vec<_>>>()?;
    if data.is_empty() && rows * cols == 0 {
        return Ok(Mat::zeros(rows, cols));
    }
    if data.len() != rows {
        return Err(Error::DimensionMismatch(format!("expected {rows} rows, found {}", data.len())));
    }
    Mat::from_rows(data, cols)
}

pub fn matrix_to_json(m: &Mat) -> Value {
    json!(m.to_rows().iter().map(|r| r.iter().map(fmt_q).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn degree_key(k: &str) -> Result<i32> {
    k.trim().parse().map_err(|_| err(format!("bad degree `{k}`")))
}

pub fn parse_complex(v: &Value) -> Result<RationalComplex> {
    let dims: BTreeMap<i32, usize> = field(v, "degrees")?
        .as_object()
        .ok_or_else(|| err("`degrees` must be an object"))?
        .iter()
        .map(|(k, n)| Ok((degree_key(k)?, n.as_u64().ok_or_else(|| err("dimensions are integers"))? as usize)))
        .collect::<Result<_>>()?;
    let dim = |k: i32| dims.get(&k).copied().unwrap_or(0);
    let diffs = match v.get("differentials") {
        Some(d) => d
            .as_object()
            .ok_or_else(|| err("`differentials` must be an object"))?
            .iter()
            .map(|(k, m)| {
                let k = degree_key(k)?;
                Ok((k, parse_matrix(m, dim(k - 1), dim(k))?))
            })
            .collect::<Result<_>>()?,
        None => BTreeMap::new(),
    };
    RationalComplex::new(dims, diffs)
}

pub fn complex_to_json(c: &RationalComplex) -> Value {
    let degrees: Map<String, Value> = c.dims().iter().map(|(k, n)| (k.to_string(), json!(n))).collect();
    let diffs: Map<String, Value> = c.diffs().iter().map(|(k, m)| (k.to_string(), matrix_to_json(m))).collect();
    json!({"degrees": degrees, "differentials": diffs})
}

pub fn homology_to_json(h: &BTreeMap<i32, usize>) -> Value {
    Value::Object(h.iter().map(|(k, n)| (k.to_string(), json!(n))).collect())
}

/// Either a skyscraper presentation `{"space", "generators": [{"point", "degree"}],
/// "differential"}` or explicit `{"space", "sections": {open: complex}, "restrictions":
/// {"U>V": {degree: matrix}}}`.
pub fn parse_complex_sheaf(v: &Value, limit: usize) -> Result<ComplexSheaf> {
    let space = match parse_space(field(v, "space")?)? {
        SpaceDescriptor::Finite(p) => p,
        SpaceDescriptor::Builtin(b) => return Err(Error::TierUnsupported(b.name().into())),
    };
    if let Some(gens) = v.get("generators") {
        let gens = gens.as_array().ok_or_else(|| err("`generators` must be an array"))?;
        let mut points = Vec::with_capacity(gens.len());
        let mut degrees = Vec::with_capacity(gens.len());
        for g in gens {
            points.push(space.index_of(&string(field(g, "point")?)?)?);
            degrees.push(field(g, "degree")?.as_i64().ok_or_else(|| err("degrees are integers"))? as i32);
        }
        let n = points.len();
        let d = match v.get("differential") {
            Some(m) => parse_matrix(m, n, n)?,
            None => Mat::zeros(n, n),
        };
        return ComplexSheaf::from_generators(&space, &points, &degrees, &d, limit);
    }
    let sections: BTreeMap<String, RationalComplex> = field(v, "sections")?
        .as_object()
        .ok_or_else(|| err("`sections` must be an object"))?
        .iter()
        .map(|(k, c)| Ok((k.clone(), parse_complex(c)?)))
        .collect::<Result<_>>()?;
    let mut restrictions = BTreeMap::new();
    if let Some(r) = v.get("restrictions") {
        let lookup: HashMap<&str, &RationalComplex> = sections.iter().map(|(k, c)| (k.as_str(), c)).collect();
        let zero = RationalComplex::zero();
        for (key, comps) in r.as_object().ok_or_else(|| err("`restrictions` must be an object"))? {
            let (a, b) = key.split_once('>').ok_or_else(|| err(format!("restriction key `{key}` lacks `>`")))?;
            let (src, tgt) = (lookup.get(a).copied().unwrap_or(&zero), lookup.get(b).copied().unwrap_or(&zero));
            let maps = comps
                .as_object()
                .ok_or_else(|| err("restriction components must be an object"))?
                .iter()
                .map(|(k, m)| {
                    let k = degree_key(k)?;
                    Ok((k, parse_matrix(m, tgt.dim(k), src.dim(k))?))
                })
                .collect::<Result<BTreeMap<i32, Mat>>>()?;
            restrictions.insert((a.to_string(), b.to_string()), maps);
        }
    }
    ComplexSheaf::new(&space, &sections, &restrictions, limit)
}

/// `{"source": poset, "target": poset, "map": {a: b}}` or `{"hom": "pow:2"}` on `dint`.
pub fn parse_perfect_map(v: &Value) -> Result<PerfectMap> {
    if let Some(h) = v.get("hom") {
        return Ok(PerfectMap::Dint(DintHom::parse(&string(h)?)?));
    }
    let source = parse_poset(field(v, "source")?)?;
    let target = parse_poset(field(v, "target")?)?;
    let map = string_map(field(v, "map")?)?;
    let table = (0..source.len())
        .map(|i| {
            let l = source.label(i);
            let t = map.get(l).ok_or_else(|| Error::InvalidMap(format!("no image for `{l}`")))?;
            target.index_of(t)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PerfectMap::Finite(MonotoneMap::new(source, target, table)?))
}
