//! Step-function presheaves on the directed interval.
//!
//! Opens are `up(q) = (q,1]`, so restriction runs from smaller `q` to larger `q`. Finitely
//! many thresholds cut `[0,1)` into segments; a threshold on the `Left` side belongs to the
//! segment below it. A threshold may repeat once, right side first, to isolate a point.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::frame::{Builtin, Element, Frame};
use crate::rational::{fmt_q, in_unit_interval, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            _ => Err(Error::Parse(format!("unknown side `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JumpPresheaf {
    thresholds: Vec<Q>,
    sides: Vec<Side>,
    values: Vec<Vec<String>>,
    maps: Vec<Vec<usize>>,
    top: Vec<String>,
    top_map: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JumpSheafifyReport {
    pub at: String,
    pub value: Vec<String>,
    pub limit: Vec<String>,
    pub comparison: Vec<(String, String)>,
    pub bijective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImageCheck {
    pub holds: bool,
    pub checked: Vec<String>,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KSheafReport {
    pub compact: String,
    pub fhat: Vec<String>,
    pub holds: bool,
}

fn bijective(map: &[usize], target_len: usize) -> bool {
    let mut hit = vec![false; target_len];
    map.len() == target_len && map.iter().all(|&t| !std::mem::replace(&mut hit[t], true))
}

fn table(src: &[String], dst: &[String], map: &BTreeMap<String, String>, what: &str) -> Result<Vec<usize>> {
    src.iter()
        .map(|s| {
            let t = map.get(s).ok_or_else(|| Error::InvalidMap(format!("{what} is undefined on `{s}`")))?;
            dst.iter().position(|d| d == t).ok_or_else(|| Error::UnknownLabel(t.clone()))
        })
        .collect()
}

impl JumpPresheaf {
    /// `top` defaults to the first segment with the identity map into it.
    pub fn new(
        thresholds: Vec<Q>,
        sides: Vec<Side>,
        values: Vec<Vec<String>>,
        maps: &[BTreeMap<String, String>],
        top: Option<(Vec<String>, BTreeMap<String, String>)>,
    ) -> Result<Self> {
        let k = thresholds.len();
        if sides.len() != k || values.len() != k + 1 || maps.len() != k {
            return Err(Error::DimensionMismatch(format!(
                "{k} thresholds need {k} sides, {} value sets and {k} maps",
                k + 1
            )));
        }
        for (i, t) in thresholds.iter().enumerate() {
            if !in_unit_interval(t) || *t == Q::from_integer(1.into()) {
                return Err(Error::OutOfRange(fmt_q(t)));
            }
            // A repeated threshold must be a right cut followed by a left cut, which
            // isolates a one-point segment.
            if i > 0
                && (thresholds[i - 1] > *t
                    || (thresholds[i - 1] == *t && (sides[i - 1], sides[i]) != (Side::Right, Side::Left)))
            {
                return Err(Error::Parse("thresholds must be increasing".into()));
            }
        }
        let tables = maps
            .iter()
            .enumerate()
            .map(|(i, m)| table(&values[i], &values[i + 1], m, &format!("map {i}")))
            .collect::<Result<Vec<_>>>()?;
        let (top, top_map) = match top {
            Some((t, m)) => {
                let tm = table(&t, &values[0], &m, "top map")?;
                (t, tm)
            }
            None => (values[0].clone(), (0..values[0].len()).collect()),
        };
        Ok(JumpPresheaf { thresholds, sides, values, maps: tables, top, top_map })
    }

    pub fn constant(value: Vec<String>) -> Self {
        let n = value.len();
        JumpPresheaf {
            thresholds: vec![],
            sides: vec![],
            values: vec![value.clone()],
            maps: vec![],
            top: value,
            top_map: (0..n).collect(),
        }
    }

    pub fn thresholds(&self) -> &[Q] {
        &self.thresholds
    }

    pub fn sides(&self) -> &[Side] {
        &self.sides
    }

    pub fn segments(&self) -> &[Vec<String>] {
        &self.values
    }

    pub fn top(&self) -> &[String] {
        &self.top
    }

    /// Segment holding `up(q)`.
    pub fn segment(&self, q: &Q) -> usize {
        self.thresholds
            .iter()
            .zip(&self.sides)
            .filter(|(t, s)| *t < q || (*t == q && **s == Side::Right))
            .count()
    }

    /// Segment reached as `p` decreases to `q`.
    pub fn segment_right(&self, q: &Q) -> usize {
        self.thresholds.iter().filter(|t| *t <= q).count()
    }

    /// Segment reached as `p` increases to `q`.
    pub fn segment_left(&self, q: &Q) -> usize {
        self.thresholds.iter().filter(|t| *t < q).count()
    }

    fn composite(&self, i: usize, j: usize) -> Vec<usize> {
        let mut m: Vec<usize> = (0..self.values[i].len()).collect();
        for step in &self.maps[i..j] {
            m = m.iter().map(|&x| step[x]).collect();
        }
        m
    }

    fn from_top(&self, j: usize) -> Vec<usize> {
        let c = self.composite(0, j);
        self.top_map.iter().map(|&x| c[x]).collect()
    }

    pub fn evaluate(&self, e: &Element) -> Result<Vec<String>> {
        match e {
            Element::Bot => Ok(vec!["*".into()]),
            Element::Top => Ok(self.top.clone()),
            Element::Up(q) => Ok(self.values[self.segment(q)].clone()),
            other => Err(Error::InvalidElement(Frame::Builtin(Builtin::Dint).show(other))),
        }
    }

    /// Restriction from `x` to `y ≤ x`.
    pub fn restriction(&self, x: &Element, y: &Element) -> Result<Vec<usize>> {
        let f = Frame::Builtin(Builtin::Dint);
        if !f.le(y, x) {
            return Err(Error::PairNotInOrder(f.show(y), f.show(x)));
        }
        Ok(match (x, y) {
            (_, Element::Bot) => vec![0; self.evaluate(x)?.len()],
            (Element::Top, Element::Top) => (0..self.top.len()).collect(),
            (Element::Top, Element::Up(q)) => self.from_top(self.segment(q)),
            (Element::Up(p), Element::Up(q)) => self.composite(self.segment(p), self.segment(q)),
            _ => return Err(Error::InvalidElement(f.show(y))),
        })
    }

    /// A chain has only degenerate squares and `F(∅)` is forced to a point.
    pub fn is_excisive(&self) -> bool {
        true
    }

    /// `F(U) → lim_{V ≪ U} F(V)`. For `U = up(q)` the limit is the value just above `q`.
    pub fn sheafify_at(&self, e: &Element) -> Result<JumpSheafifyReport> {
        let f = Frame::Builtin(Builtin::Dint);
        let value = self.evaluate(e)?;
        let (limit, map) = match e {
            Element::Up(q) => {
                let (i, j) = (self.segment(q), self.segment_right(q));
                (self.values[j].clone(), self.composite(i, j))
            }
            // ⊤ ≪ ⊤ and ⊥ ≪ ⊥ make the diagram have a terminal member.
            _ => (value.clone(), (0..value.len()).collect()),
        };
        Ok(JumpSheafifyReport {
            at: f.show(e),
            bijective: bijective(&map, limit.len()),
            comparison: map.iter().enumerate().map(|(s, &t)| (value[s].clone(), limit[t].clone())).collect(),
            value,
            limit,
        })
    }

    /// `U ↦ colim_{V ≫ U} F(V)`: every segment takes the value just below it and `up(0)`
    /// takes the value on `⊤`. This is both the pullback along `γ` restricted to compact
    /// opens and the extension to compact saturated sets `[r,1]`.
    pub fn left_regularization(&self) -> JumpPresheaf {
        let mut thresholds = vec![Q::zero()];
        thresholds.extend(self.thresholds.iter().filter(|t| !t.is_zero()).cloned());
        thresholds.dedup();
        let source: Vec<usize> = thresholds.iter().map(|t| self.segment_right(t)).collect();
        let mut values = vec![self.top.clone()];
        values.extend(source.iter().map(|&i| self.values[i].clone()));
        let mut maps = vec![self.from_top(source[0])];
        maps.extend(source.windows(2).map(|w| self.composite(w[0], w[1])));
        JumpPresheaf {
            sides: vec![Side::Left; thresholds.len()],
            thresholds,
            values,
            maps,
            top_map: (0..self.top.len()).collect(),
            top: self.top.clone(),
        }
    }

    /// Reads `self` as a presheaf on the compact opens of `γ(dint)` and checks that
    /// `colim_{V ≫ U} G(V) → G(U)` is bijective. Only `up(0)` and thresholds can fail.
    pub fn flachsmeyer_image_check(&self) -> ImageCheck {
        let mut checked = vec!["closed:0".to_string()];
        let mut failures = Vec::new();
        let j0 = self.segment(&Q::zero());
        if !bijective(&self.from_top(j0), self.values[j0].len()) {
            failures.push("closed:0".to_string());
        }
        let mut points: Vec<&Q> = self.thresholds.iter().filter(|t| !t.is_zero()).collect();
        points.dedup();
        for t in points {
            let name = format!("closed:{}", fmt_q(t));
            let (i, j) = (self.segment_left(t), self.segment(t));
            if !bijective(&self.composite(i, j), self.values[j].len()) {
                failures.push(name.clone());
            }
            checked.push(name);
        }
        ImageCheck { holds: failures.is_empty(), checked, failures }
    }

    /// `F̂([r,1]) = colim_{U ⊇ [r,1]} F(U)` and the condition at `[r,1]` for `F̂`.
    pub fn k_sheaf_check(&self, r: &Q) -> Result<KSheafReport> {
        if !in_unit_interval(r) {
            return Err(Error::OutOfRange(fmt_q(r)));
        }
        let ext = self.left_regularization();
        Ok(KSheafReport {
            compact: format!("[{},1]", fmt_q(r)),
            fhat: ext.values[ext.segment(r)].clone(),
            holds: ext.k_condition(r),
        })
    }

    /// Reads `self` as an assignment `[r,1] ↦ G([r,1])` on compact saturated sets and checks
    /// that `colim_{L ≫' K} G(L) → G(K)` is bijective at `K = [r,1]`. Here `L = [s,1] ≫' K`
    /// iff `s < r`, so the colimit is the value just below `r`.
    pub fn k_condition(&self, r: &Q) -> bool {
        if r.is_zero() {
            return true;
        }
        let (i, j) = (self.segment_left(r), self.segment(r));
        bijective(&self.composite(i, j), self.values[j].len())
    }

    /// Pointwise product. A point where one factor jumps on the left and the other on the
    /// right gets its own one-point segment.
    pub fn product(&self, other: &JumpPresheaf) -> JumpPresheaf {
        let mut ts: Vec<Q> = self.thresholds.iter().chain(&other.thresholds).cloned().collect();
        ts.sort();
        ts.dedup();
        let mut thresholds = Vec::new();
        let mut sides = Vec::new();
        let mut idx = vec![(0usize, 0usize)];
        for t in ts {
            let left = (self.segment_left(&t), other.segment_left(&t));
            let at = (self.segment(&t), other.segment(&t));
            let right = (self.segment_right(&t), other.segment_right(&t));
            if at != left {
                thresholds.push(t.clone());
                sides.push(Side::Right);
                idx.push(at);
            }
            if right != at {
                thresholds.push(t);
                sides.push(Side::Left);
                idx.push(right);
            }
        }
        let values = idx.iter().map(|&(a, b)| pair_labels(&self.values[a], &other.values[b])).collect();
        let maps = idx
            .windows(2)
            .map(|w| {
                pair_map(&self.composite(w[0].0, w[1].0), &other.composite(w[0].1, w[1].1), other.values[w[1].1].len())
            })
            .collect();
        JumpPresheaf {
            thresholds,
            sides,
            values,
            maps,
            top: pair_labels(&self.top, &other.top),
            top_map: pair_map(&self.top_map, &other.top_map, other.values[0].len()),
        }
    }
}

fn pair_labels(a: &[String], b: &[String]) -> Vec<String> {
    a.iter().flat_map(|x| b.iter().map(move |y| format!("({x},{y})"))).collect()
}

fn pair_map(f: &[usize], g: &[usize], width: usize) -> Vec<usize> {
    f.iter().flat_map(|&a| g.iter().map(move |&b| a * width + b)).collect()
}

/// Stages `F_n`, `n ≥ 1`, equal to `{*}` on `up(p)` for `p ≤ t_n` and `{*, s}` above, with
/// `t_n = q0 + (1 - q0)/(n + 1)` decreasing to `q0`. Each stage includes into the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproachingFamily {
    pub limit: Q,
}

impl ApproachingFamily {
    pub fn new(limit: Q) -> Result<Self> {
        if !in_unit_interval(&limit) || limit == Q::from_integer(1.into()) {
            return Err(Error::OutOfRange(fmt_q(&limit)));
        }
        Ok(ApproachingFamily { limit })
    }

    pub fn threshold(&self, n: usize) -> Q {
        &self.limit + (Q::from_integer(1.into()) - &self.limit) / Q::from_integer(((n + 1) as i64).into())
    }

    pub fn stage(&self, n: usize) -> JumpPresheaf {
        let mut m = BTreeMap::new();
        m.insert("*".to_string(), "*".to_string());
        JumpPresheaf::new(
            vec![self.threshold(n)],
            vec![Side::Left],
            vec![vec!["*".into()], vec!["*".into(), "s".into()]],
            &[m],
            None,
        )
        .expect("well-formed stage")
    }

    /// Sections of the colimit sheaf over `up(p)`: the pointwise colimit just above `p`.
    pub fn colimit_at(&self, p: &Q) -> Vec<String> {
        if *p >= self.limit {
            vec!["*".into(), "s".into()]
        } else {
            vec!["*".into()]
        }
    }

    /// For a section `elem` of the colimit over `up(q_prime)`, the least stage through which
    /// its restriction to `up(q)` factors. `None` when no finite stage suffices.
    pub fn factor_stage(&self, q_prime: &Q, q: &Q, elem: &str) -> Result<Option<usize>> {
        if q_prime > q || !in_unit_interval(q) || *q == Q::from_integer(1.into()) {
            return Err(Error::PairNotInOrder(fmt_q(q_prime), fmt_q(q)));
        }
        if !self.colimit_at(q_prime).iter().any(|e| e == elem) {
            return Err(Error::UnknownLabel(elem.to_string()));
        }
        if elem == "*" {
            return Ok(Some(1));
        }
        if *q <= self.limit {
            return Ok(None);
        }
        let x = (Q::from_integer(1.into()) - &self.limit) / (q - &self.limit);
        let n = (x.floor().to_integer().try_into().unwrap_or(usize::MAX)).max(1);
        let has = |k: usize| self.stage(k).evaluate(&Element::Up(q.clone())).unwrap().iter().any(|e| e == elem);
        debug_assert!(has(n) && (n == 1 || !has(n - 1)));
        Ok(Some(n))
    }
}
