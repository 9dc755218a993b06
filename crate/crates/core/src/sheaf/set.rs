//! Presheaves of finite sets on finite spaces.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::order::FinitePoset;
use crate::sheaf::Opens;

/// `F(U)` for every open `U`, with restriction functions `F(U) → F(V)` for all `V ⊆ U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetPresheaf {
    opens: Opens,
    values: Vec<Vec<String>>,
    // restr[u][v] is Some iff v ⊆ u
    restr: Vec<Vec<Option<Vec<usize>>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SheafifyReport {
    pub open: String,
    pub value: Vec<String>,
    /// Compatible families over `{V : V ≪ U}`, one component per open in `diagram`.
    pub diagram: Vec<String>,
    pub limit: Vec<Vec<String>>,
    /// Image of each element of `F(U)` as an index into `limit`.
    pub comparison: Vec<usize>,
    pub bijective: bool,
}

impl SetPresheaf {
    /// Builds a presheaf from per-open values and restriction tables. Missing restrictions
    /// are composed along covers of the frame of opens; `F(∅)` defaults to a singleton.
    pub fn new(
        space: &FinitePoset,
        values: &BTreeMap<String, Vec<String>>,
        restrictions: &BTreeMap<(String, String), BTreeMap<String, String>>,
        limit: usize,
    ) -> Result<Self> {
        let opens = Opens::new(space, limit)?;
        let n = opens.len();
        let mut vals: Vec<Option<Vec<String>>> = vec![None; n];
        for (id, elems) in values {
            let u = opens.index_of(id)?;
            let mut seen = std::collections::HashSet::new();
            for e in elems {
                if !seen.insert(e) {
                    return Err(Error::DuplicateLabel(e.clone()));
                }
            }
            vals[u] = Some(elems.clone());
        }
        if vals[opens.empty()].is_none() {
            vals[opens.empty()] = Some(vec!["*".into()]);
        }
        let values: Vec<Vec<String>> = vals
            .into_iter()
            .enumerate()
            .map(|(u, v)| v.ok_or_else(|| Error::InvalidMap(format!("no value for open {{{}}}", opens.id(u)))))
            .collect::<Result<_>>()?;
        let mut given: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for ((a, b), table) in restrictions {
            let (u, v) = (opens.index_of(a)?, opens.index_of(b)?);
            if !opens.subset(v, u) {
                return Err(Error::InvalidMap(format!("{{{b}}} is not contained in {{{a}}}")));
            }
            let lookup = |set: usize, e: &str| {
                values[set].iter().position(|x| x == e).ok_or_else(|| Error::UnknownLabel(e.to_string()))
            };
            let mut row = vec![usize::MAX; values[u].len()];
            for (src, dst) in table {
                row[lookup(u, src)?] = lookup(v, dst)?;
            }
            if let Some(i) = row.iter().position(|&t| t == usize::MAX) {
                return Err(Error::InvalidMap(format!(
                    "restriction {{{a}}} > {{{b}}} is undefined on `{}`",
                    values[u][i]
                )));
            }
            given.insert((u, v), row);
        }
        // The target of restriction to ∅ is a singleton when omitted.
        let empty = opens.empty();
        if values[empty].len() == 1 {
            for u in 0..n {
                given.entry((u, empty)).or_insert_with(|| vec![0; values[u].len()]);
            }
        }
        let mut restr: Vec<Vec<Option<Vec<usize>>>> = vec![vec![None; n]; n];
        // Opens are sorted by size, so shorter gaps are filled first.
        let mut pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).filter(|&(u, v)| opens.subset(v, u)).collect();
        pairs.sort_by_key(|&(u, v)| opens.members(u).len() - opens.members(v).len());
        for (u, v) in pairs {
            let row = if u == v {
                (0..values[u].len()).collect()
            } else if let Some(row) = given.get(&(u, v)) {
                row.clone()
            } else {
                let w = opens.step_down(u, v).expect("a cover below u above v");
                let first = given.get(&(u, w)).cloned().ok_or_else(|| {
                    Error::InvalidMap(format!("missing restriction {{{}}} > {{{}}}", opens.id(u), opens.id(w)))
                })?;
                let second = restr[w][v].as_ref().expect("shorter gap already filled");
                first.iter().map(|&i| second[i]).collect()
            };
            restr[u][v] = Some(row);
        }
        let f = SetPresheaf { opens, values, restr };
        if let Some(msg) = f.functoriality_counterexample() {
            return Err(Error::NotFunctorial(msg));
        }
        Ok(f)
    }

    /// Sections over `U` are compatible families `(s_x)_{x ∈ U}` of stalk elements, where the
    /// stalk maps `stalk(x) → stalk(y)` are given for `x ≤ y` along covers.
    pub fn from_stalks(space: &FinitePoset, stalks: &[Vec<String>], maps: &HashMap<(usize, usize), Vec<usize>>, limit: usize) -> Result<Self> {
        let n = space.len();
        if stalks.len() != n {
            return Err(Error::DimensionMismatch(format!("{} stalks for {n} points", stalks.len())));
        }
        let ext = space.linear_extension();
        let mut comp: Vec<Vec<Option<Vec<usize>>>> = vec![vec![None; n]; n];
        for x in 0..n {
            comp[x][x] = Some((0..stalks[x].len()).collect());
        }
        for &y in &ext {
            for &x in ext.iter().rev() {
                if x == y || !space.lt(x, y) {
                    continue;
                }
                // x < w ⋖ ... ≤ y with x ⋖ w a cover
                let w = space
                    .covers()
                    .into_iter()
                    .find(|&(a, b)| a == x && space.le(b, y))
                    .map(|(_, b)| b)
                    .expect("a cover above x below y");
                let first = maps.get(&(x, w)).ok_or_else(|| {
                    Error::InvalidMap(format!("missing stalk map {} -> {}", space.label(x), space.label(w)))
                })?;
                if first.len() != stalks[x].len() || first.iter().any(|&t| t >= stalks[w].len()) {
                    return Err(Error::InvalidMap(format!("stalk map {} -> {}", space.label(x), space.label(w))));
                }
                let second = comp[w][y].clone().expect("filled above");
                comp[x][y] = Some(first.iter().map(|&i| second[i]).collect());
            }
        }
        for x in 0..n {
            for w in 0..n {
                for y in 0..n {
                    if space.le(x, w) && space.le(w, y) {
                        let via: Vec<usize> = comp[x][w].as_ref().unwrap().iter().map(|&i| comp[w][y].as_ref().unwrap()[i]).collect();
                        if &via != comp[x][y].as_ref().unwrap() {
                            return Err(Error::NotFunctorial(format!(
                                "stalk maps through {} disagree",
                                space.label(w)
                            )));
                        }
                    }
                }
            }
        }
        let opens = Opens::new(space, limit)?;
        let mut families: Vec<Vec<Vec<usize>>> = Vec::with_capacity(opens.len());
        for u in 0..opens.len() {
            let pts = opens.members(u).to_vec();
            let mut out = Vec::new();
            let mut cur = vec![usize::MAX; n];
            enumerate_families(&pts, 0, stalks, &comp, space, &mut cur, &mut out);
            families.push(out);
        }
        let values: Vec<Vec<String>> = (0..opens.len())
            .map(|u| {
                families[u]
                    .iter()
                    .map(|fam| {
                        let parts: Vec<String> =
                            opens.members(u).iter().map(|&x| format!("{}:{}", space.label(x), stalks[x][fam[x]])).collect();
                        if parts.is_empty() {
                            "*".to_string()
                        } else {
                            parts.join(";")
                        }
                    })
                    .collect()
            })
            .collect();
        let n_opens = opens.len();
        let mut restr = vec![vec![None; n_opens]; n_opens];
        for u in 0..n_opens {
            for v in 0..n_opens {
                if opens.subset(v, u) {
                    let index: HashMap<Vec<usize>, usize> = families[v]
                        .iter()
                        .enumerate()
                        .map(|(i, fam)| (opens.members(v).iter().map(|&x| fam[x]).collect(), i))
                        .collect();
                    let row = families[u]
                        .iter()
                        .map(|fam| index[&opens.members(v).iter().map(|&x| fam[x]).collect::<Vec<_>>()])
                        .collect();
                    restr[u][v] = Some(row);
                }
            }
        }
        Ok(SetPresheaf { opens, values, restr })
    }

    pub fn opens(&self) -> &Opens {
        &self.opens
    }

    pub fn space(&self) -> &FinitePoset {
        self.opens.space()
    }

    pub fn value(&self, u: usize) -> &[String] {
        &self.values[u]
    }

    pub fn restriction(&self, u: usize, v: usize) -> Option<&[usize]> {
        self.restr[u][v].as_deref()
    }

    pub fn functoriality_counterexample(&self) -> Option<String> {
        let n = self.opens.len();
        for u in 0..n {
            for v in 0..n {
                let Some(uv) = &self.restr[u][v] else { continue };
                for w in 0..n {
                    let (Some(vw), Some(uw)) = (&self.restr[v][w], &self.restr[u][w]) else { continue };
                    if uv.iter().map(|&i| vw[i]).ne(uw.iter().copied()) {
                        return Some(format!(
                            "{{{}}} > {{{}}} > {{{}}} does not compose",
                            self.opens.id(u),
                            self.opens.id(v),
                            self.opens.id(w)
                        ));
                    }
                }
            }
        }
        None
    }

    /// `None` when `F(∅)` is a singleton and every square of opens is a pullback.
    pub fn excision_counterexample(&self) -> Option<String> {
        let o = &self.opens;
        if self.values[o.empty()].len() != 1 {
            return Some(format!("F(∅) has {} elements", self.values[o.empty()].len()));
        }
        for (u, v) in o.incomparable_pairs() {
            let (j, m) = (o.union(u, v), o.intersection(u, v));
            let (ru, rv) = (self.restr[j][u].as_ref().unwrap(), self.restr[j][v].as_ref().unwrap());
            let (um, vm) = (self.restr[u][m].as_ref().unwrap(), self.restr[v][m].as_ref().unwrap());
            let mut image = std::collections::HashSet::new();
            for s in 0..self.values[j].len() {
                if !image.insert((ru[s], rv[s])) {
                    return Some(format!(
                        "two sections over {{{}}} agree on {{{}}} and {{{}}}",
                        o.id(j),
                        o.id(u),
                        o.id(v)
                    ));
                }
            }
            let pullback = (0..self.values[u].len())
                .flat_map(|a| (0..self.values[v].len()).map(move |b| (a, b)))
                .filter(|&(a, b)| um[a] == vm[b])
                .count();
            if pullback != image.len() {
                return Some(format!(
                    "compatible sections over {{{}}} and {{{}}} do not glue",
                    o.id(u),
                    o.id(v)
                ));
            }
        }
        None
    }

    pub fn is_excisive(&self) -> bool {
        self.excision_counterexample().is_none()
    }

    /// The comparison `F(U) → lim_{V ≪ U} F(V)`, with the limit computed as the set of
    /// compatible families. On a finite frame `V ≪ U` iff `V ⊆ U`.
    pub fn sheafify_at(&self, u: usize) -> Result<SheafifyReport> {
        if let Some(msg) = self.excision_counterexample() {
            return Err(Error::NotExcisive(msg));
        }
        let o = &self.opens;
        let mut diagram: Vec<usize> = (0..o.len()).filter(|&v| o.subset(v, u)).collect();
        diagram.sort_by_key(|&v| std::cmp::Reverse(o.members(v).len()));
        let mut families = Vec::new();
        let mut cur = Vec::with_capacity(diagram.len());
        self.compatible_families(&diagram, &mut cur, &mut families);
        let index: HashMap<&[usize], usize> = families.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
        let comparison: Vec<usize> = (0..self.values[u].len())
            .map(|s| {
                let fam: Vec<usize> = diagram.iter().map(|&v| self.restr[u][v].as_ref().unwrap()[s]).collect();
                index[fam.as_slice()]
            })
            .collect();
        let mut hit = vec![false; families.len()];
        for &c in &comparison {
            hit[c] = true;
        }
        let bijective = comparison.len() == families.len() && hit.iter().all(|&h| h);
        Ok(SheafifyReport {
            open: o.id(u),
            value: self.values[u].clone(),
            diagram: diagram.iter().map(|&v| o.id(v)).collect(),
            limit: families
                .iter()
                .map(|f| f.iter().zip(&diagram).map(|(&s, &v)| self.values[v][s].clone()).collect())
                .collect(),
            comparison,
            bijective,
        })
    }

    // Backtracking over the diagram, largest opens first, pruning on each restriction.
    fn compatible_families(&self, diagram: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let k = cur.len();
        if k == diagram.len() {
            out.push(cur.clone());
            return;
        }
        let v = diagram[k];
        for s in 0..self.values[v].len() {
            let ok = (0..k).all(|i| match &self.restr[diagram[i]][v] {
                Some(r) => r[cur[i]] == s,
                None => true,
            });
            if ok {
                cur.push(s);
                self.compatible_families(diagram, cur, out);
                cur.pop();
            }
        }
    }

    /// Pointwise product `(F × G)(U) = F(U) × G(U)`.
    pub fn product(&self, other: &SetPresheaf) -> Result<SetPresheaf> {
        if self.opens != other.opens {
            return Err(Error::DimensionMismatch("presheaves live on different spaces".into()));
        }
        let n = self.opens.len();
        let values = (0..n)
            .map(|u| {
                self.values[u]
                    .iter()
                    .flat_map(|a| other.values[u].iter().map(move |b| format!("({a},{b})")))
                    .collect()
            })
            .collect();
        let restr = (0..n)
            .map(|u| {
                (0..n)
                    .map(|v| {
                        let (Some(r), Some(s)) = (&self.restr[u][v], &other.restr[u][v]) else { return None };
                        let w = other.values[v].len();
                        Some(r.iter().flat_map(|&a| s.iter().map(move |&b| a * w + b)).collect())
                    })
                    .collect()
            })
            .collect();
        Ok(SetPresheaf { opens: self.opens.clone(), values, restr })
    }

    pub fn values_by_id(&self) -> BTreeMap<String, Vec<String>> {
        (0..self.opens.len()).map(|u| (self.opens.id(u), self.values[u].clone())).collect()
    }
}

fn enumerate_families(
    pts: &[usize],
    k: usize,
    stalks: &[Vec<String>],
    comp: &[Vec<Option<Vec<usize>>>],
    space: &FinitePoset,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if k == pts.len() {
        out.push(cur.clone());
        return;
    }
    let y = pts[k];
    for s in 0..stalks[y].len() {
        let ok = pts[..k].iter().all(|&x| {
            let a = comp[x][y].as_ref().map_or(true, |m| m[cur[x]] == s);
            let b = comp[y][x].as_ref().map_or(true, |m| m[s] == cur[x]);
            (!space.le(x, y) || a) && (!space.le(y, x) || b)
        });
        if ok {
            cur[y] = s;
            enumerate_families(pts, k + 1, stalks, comp, space, cur, out);
        }
    }
    cur[y] = usize::MAX;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::DEFAULT_DOWNSET_LIMIT;

    fn vals(pairs: &[(&str, &[&str])]) -> BTreeMap<String, Vec<String>> {
        pairs.iter().map(|(k, v)| (k.to_string(), v.iter().map(|s| s.to_string()).collect())).collect()
    }

    fn table(pairs: &[(&str, &str, &[(&str, &str)])]) -> BTreeMap<(String, String), BTreeMap<String, String>> {
        pairs
            .iter()
            .map(|(a, b, t)| ((a.to_string(), b.to_string()), t.iter().map(|(x, y)| (x.to_string(), y.to_string())).collect()))
            .collect()
    }

    fn antichain_presheaf(top: &[&str], r: &[(&str, &str, &[(&str, &str)])]) -> Result<SetPresheaf> {
        let p = FinitePoset::antichain(2).relabel(|l| if l == "0" { "x".into() } else { "y".into() }).unwrap();
        SetPresheaf::new(&p, &vals(&[("x", &["0", "1"]), ("y", &["u"]), ("x,y", top)]), &table(r), DEFAULT_DOWNSET_LIMIT)
    }

    #[test]
    fn product_over_antichain_is_excisive() {
        let f = antichain_presheaf(
            &["0u", "1u"],
            &[("x,y", "x", &[("0u", "0"), ("1u", "1")]), ("x,y", "y", &[("0u", "u"), ("1u", "u")])],
        )
        .unwrap();
        assert!(f.is_excisive());
        let g = antichain_presheaf(&["0u"], &[("x,y", "x", &[("0u", "0")]), ("x,y", "y", &[("0u", "u")])]).unwrap();
        assert!(!g.is_excisive());
        assert!(matches!(g.sheafify_at(0), Err(Error::NotExcisive(_))));
    }

    #[test]
    fn tier_one_sheafify_is_identity() {
        let p = FinitePoset::build(&["a", "b"], &[("a", "b")]).unwrap();
        let stalks = vec![vec!["0".to_string(), "1".to_string()], vec!["s".into(), "t".into(), "u".into()]];
        let maps: HashMap<(usize, usize), Vec<usize>> = [((0, 1), vec![2, 0])].into_iter().collect();
        let f = SetPresheaf::from_stalks(&p, &stalks, &maps, DEFAULT_DOWNSET_LIMIT).unwrap();
        assert!(f.is_excisive());
        for u in 0..f.opens().len() {
            let r = f.sheafify_at(u).unwrap();
            assert!(r.bijective, "{}", r.open);
        }
    }

    #[test]
    fn missing_restriction_is_reported() {
        let e = antichain_presheaf(&["0u"], &[("x,y", "x", &[("0u", "0")])]);
        assert!(matches!(e, Err(Error::InvalidMap(_))));
    }
}
