//! Finite posets, lattices, monotone maps and downsets.
//!
//! Labels are opaque strings; everything internal works on dense indices into
//! the label list. Posets are immutable once built.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Default bound on the number of downsets an exhaustive enumeration may produce.
pub const DEFAULT_DOWNSET_LIMIT: usize = 1 << 20;

#[derive(Clone, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    le: Vec<Vec<bool>>,
}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinitePoset")
            .field("labels", &self.labels)
            .field("covers", &self.cover_labels())
            .finish()
    }
}

impl FinitePoset {
    /// Builds the reflexive-transitive closure of `covers` over `labels`.
    pub fn build<S: AsRef<str>>(labels: &[S], covers: &[(S, S)]) -> Result<Self> {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        let index = index_labels(&labels)?;
        let n = labels.len();
        let mut le = vec![vec![false; n]; n];
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in covers {
            let ia = *index.get(a.as_ref()).ok_or_else(|| Error::UnknownLabel(a.as_ref().into()))?;
            let ib = *index.get(b.as_ref()).ok_or_else(|| Error::UnknownLabel(b.as_ref().into()))?;
            le[ia][ib] = true;
        }
        transitive_closure(&mut le);
        Self::from_closed(labels, index, le)
    }

    /// Builds a poset from a full order matrix, which must already be a partial order.
    pub fn from_relation(labels: Vec<String>, le: Vec<Vec<bool>>) -> Result<Self> {
        let index = index_labels(&labels)?;
        let n = labels.len();
        if le.len() != n || le.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("order matrix is not square".into()));
        }
        for i in 0..n {
            if !le[i][i] {
                return Err(Error::InvalidMap(format!("order is not reflexive at `{}`", labels[i])));
            }
            for j in 0..n {
                if le[i][j] {
                    for k in 0..n {
                        if le[j][k] && !le[i][k] {
                            return Err(Error::InvalidMap(format!(
                                "order is not transitive at `{}` <= `{}` <= `{}`",
                                labels[i], labels[j], labels[k]
                            )));
                        }
                    }
                }
            }
        }
        Self::from_closed(labels, index, le)
    }

    fn from_closed(labels: Vec<String>, index: HashMap<String, usize>, le: Vec<Vec<bool>>) -> Result<Self> {
        let n = labels.len();
        for i in 0..n {
            for j in (i + 1)..n {
                if le[i][j] && le[j][i] {
                    return Err(Error::CycleDetected(labels[i].clone(), labels[j].clone()));
                }
            }
        }
        Ok(FinitePoset { labels, index, le })
    }

    pub fn antichain(n: usize) -> Self {
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        Self::build::<String>(&labels, &[]).expect("antichain")
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let covers: Vec<(String, String)> =
            (1..n).map(|i| ((i - 1).to_string(), i.to_string())).collect();
        Self::build(&labels, &covers).expect("chain")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Same order, new labels.
    pub fn relabel(&self, f: impl Fn(&str) -> String) -> Result<Self> {
        let labels: Vec<String> = self.labels.iter().map(|l| f(l)).collect();
        let index = index_labels(&labels)?;
        Ok(FinitePoset { labels, index, le: self.le.clone() })
    }

    /// The induced order on `keep`, in the given order.
    pub fn restrict(&self, keep: &[usize]) -> Self {
        let labels: Vec<String> = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let le = keep.iter().map(|&a| keep.iter().map(|&b| self.le[a][b]).collect()).collect();
        FinitePoset::from_relation(labels, le).expect("induced order")
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index.get(label).copied().ok_or_else(|| Error::UnknownLabel(label.into()))
    }

    #[inline]
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.le[a][b]
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.le[a][b]
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.le[a][b] || self.le[b][a]
    }

    pub fn order_matrix(&self) -> &[Vec<bool>] {
        &self.le
    }

    pub fn opposite(&self) -> Self {
        let n = self.len();
        let le = (0..n).map(|i| (0..n).map(|j| self.le[j][i]).collect()).collect();
        FinitePoset { labels: self.labels.clone(), index: self.index.clone(), le }
    }

    /// Covering pairs `(a, b)`: `a < b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) && !(0..n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn cover_labels(&self) -> Vec<(String, String)> {
        self.covers().into_iter().map(|(a, b)| (self.labels[a].clone(), self.labels[b].clone())).collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| !(0..self.len()).any(|b| self.lt(b, a))).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| !(0..self.len()).any(|b| self.lt(a, b))).collect()
    }

    pub fn bottom(&self) -> Option<usize> {
        (0..self.len()).find(|&a| (0..self.len()).all(|b| self.le[a][b]))
    }

    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&a| (0..self.len()).all(|b| self.le[b][a]))
    }

    /// A linear extension: every element appears after everything below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&a| ((0..self.len()).filter(|&b| self.lt(b, a)).count(), a));
        order
    }

    pub fn down_closure(&self, set: &[usize]) -> Vec<usize> {
        (0..self.len()).filter(|&a| set.iter().any(|&b| self.le[a][b])).collect()
    }

    pub fn up_closure(&self, set: &[usize]) -> Vec<usize> {
        (0..self.len()).filter(|&a| set.iter().any(|&b| self.le[b][a])).collect()
    }

    pub fn is_down_closed(&self, members: &[bool]) -> bool {
        (0..self.len()).all(|b| !members[b] || (0..self.len()).all(|a| !self.le[a][b] || members[a]))
    }

    pub fn is_up_closed(&self, members: &[bool]) -> bool {
        (0..self.len()).all(|a| !members[a] || (0..self.len()).all(|b| !self.le[a][b] || members[b]))
    }

    /// Least upper bound of two elements, if one exists.
    pub fn lub(&self, a: usize, b: usize) -> Option<usize> {
        let ubs: Vec<usize> = (0..self.len()).filter(|&c| self.le[a][c] && self.le[b][c]).collect();
        ubs.iter().copied().find(|&c| ubs.iter().all(|&d| self.le[c][d]))
    }

    pub fn glb(&self, a: usize, b: usize) -> Option<usize> {
        let lbs: Vec<usize> = (0..self.len()).filter(|&c| self.le[c][a] && self.le[c][b]).collect();
        lbs.iter().copied().find(|&c| lbs.iter().all(|&d| self.le[d][c]))
    }

    /// Product poset with labels `x|y`, ordered componentwise.
    pub fn product(&self, other: &FinitePoset) -> Result<FinitePoset> {
        let mut labels = Vec::new();
        let mut pairs = Vec::new();
        for a in 0..self.len() {
            for b in 0..other.len() {
                labels.push(format!("{}|{}", self.labels[a], other.labels[b]));
                pairs.push((a, b));
            }
        }
        let le = pairs
            .iter()
            .map(|&(a, b)| pairs.iter().map(|&(c, d)| self.le[a][c] && other.le[b][d]).collect())
            .collect();
        FinitePoset::from_relation(labels, le)
    }

    /// Canonical identifier of a subset: comma-joined sorted labels, empty for the empty set.
    pub fn subset_id(&self, members: &[usize]) -> String {
        let mut names: Vec<&str> = members.iter().map(|&i| self.labels[i].as_str()).collect();
        names.sort_unstable();
        names.join(",")
    }

    /// Inverse of [`subset_id`](Self::subset_id).
    pub fn parse_subset_id(&self, id: &str) -> Result<Vec<usize>> {
        if id.trim().is_empty() {
            return Ok(Vec::new());
        }
        let mut out = id.split(',').map(|s| self.index_of(s.trim())).collect::<Result<Vec<_>>>()?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Every downset, ordered by size and then lexicographically by member indices.
    pub fn downsets(&self, limit: usize) -> Result<Vec<Downset>> {
        let ext = self.linear_extension();
        let mut out: Vec<Vec<bool>> = Vec::new();
        let mut members = vec![false; self.len()];
        self.enumerate_downsets(&ext, ext.len(), &mut members, &mut out, limit)?;
        let mut sets: Vec<Vec<usize>> = out
            .into_iter()
            .map(|m| (0..m.len()).filter(|&i| m[i]).collect())
            .collect();
        sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(sets.into_iter().map(|members| Downset { members }).collect())
    }

    // Decides membership from the top of the linear extension down: an element is
    // forced in as soon as something above it is in.
    fn enumerate_downsets(
        &self,
        ext: &[usize],
        remaining: usize,
        members: &mut Vec<bool>,
        out: &mut Vec<Vec<bool>>,
        limit: usize,
    ) -> Result<()> {
        if remaining == 0 {
            if out.len() >= limit {
                return Err(Error::SizeLimitExceeded { what: "downsets", limit });
            }
            out.push(members.clone());
            return Ok(());
        }
        let x = ext[remaining - 1];
        let forced = (0..self.len()).any(|y| members[y] && self.le[x][y]);
        if !forced {
            self.enumerate_downsets(ext, remaining - 1, members, out, limit)?;
        }
        members[x] = true;
        let r = self.enumerate_downsets(ext, remaining - 1, members, out, limit);
        members[x] = false;
        r
    }
}

fn index_labels(labels: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(index)
}

/// Warshall closure in place.
pub fn transitive_closure(rel: &mut [Vec<bool>]) {
    let n = rel.len();
    for k in 0..n {
        for i in 0..n {
            if rel[i][k] {
                for j in 0..n {
                    if rel[k][j] {
                        rel[i][j] = true;
                    }
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Downset {
    members: Vec<usize>,
}

impl Downset {
    pub fn new(poset: &FinitePoset, members: &[usize]) -> Result<Self> {
        let mut mask = vec![false; poset.len()];
        for &m in members {
            if m >= poset.len() {
                return Err(Error::InvalidElement(m.to_string()));
            }
            mask[m] = true;
        }
        if !poset.is_down_closed(&mask) {
            return Err(Error::InvalidElement(format!("{{{}}} is not a downset", poset.subset_id(members))));
        }
        Ok(Downset { members: (0..poset.len()).filter(|&i| mask[i]).collect() })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn id(&self, poset: &FinitePoset) -> String {
        poset.subset_id(&self.members)
    }

    pub fn is_subset(&self, other: &Downset) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    /// The complement, which is a downset of the opposite poset.
    pub fn complement(&self, poset: &FinitePoset) -> Downset {
        Downset { members: (0..poset.len()).filter(|&i| !self.contains(i)).collect() }
    }
}

/// A finite lattice with precomputed join and meet tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    poset: FinitePoset,
    join: Vec<Vec<usize>>,
    meet: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
}

impl FiniteLattice {
    pub fn from_poset(poset: FinitePoset) -> Result<Self> {
        let n = poset.len();
        if n == 0 {
            return Err(Error::NotALattice("".into(), "".into(), "bottom"));
        }
        let mut join = vec![vec![0; n]; n];
        let mut meet = vec![vec![0; n]; n];
        for a in 0..n {
            for b in a..n {
                let j = poset
                    .lub(a, b)
                    .ok_or_else(|| Error::NotALattice(poset.label(a).into(), poset.label(b).into(), "join"))?;
                let m = poset
                    .glb(a, b)
                    .ok_or_else(|| Error::NotALattice(poset.label(a).into(), poset.label(b).into(), "meet"))?;
                join[a][b] = j;
                join[b][a] = j;
                meet[a][b] = m;
                meet[b][a] = m;
            }
        }
        let bottom = poset.bottom().ok_or_else(|| Error::NotALattice("".into(), "".into(), "bottom"))?;
        let top = poset.top().ok_or_else(|| Error::NotALattice("".into(), "".into(), "top"))?;
        Ok(FiniteLattice { poset, join, meet, bottom, top })
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn relabel(&self, f: impl Fn(&str) -> String) -> Result<Self> {
        Ok(FiniteLattice { poset: self.poset.relabel(f)?, ..self.clone() })
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    #[inline]
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.poset.le(a, b)
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn join_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn meet_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn label(&self, a: usize) -> &str {
        self.poset.label(a)
    }

    /// Largest `r` with `a ∧ r = ⊥`.
    pub fn pseudocomplement(&self, a: usize) -> usize {
        self.join_all((0..self.len()).filter(|&r| self.meet(a, r) == self.bottom))
    }

    /// `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)` for all triples; returns the first failure.
    pub fn distributivity_counterexample(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.meet(x, self.join(y, z)) != self.join(self.meet(x, y), self.meet(x, z)) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_counterexample().is_none()
    }

    /// Checks that the stored tables agree with least upper and greatest lower bounds.
    pub fn tables_consistent(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| {
            (0..n).all(|b| {
                Some(self.join[a][b]) == self.poset.lub(a, b) && Some(self.meet[a][b]) == self.poset.glb(a, b)
            })
        })
    }

    /// Backtracking search for an order isomorphism onto `other`.
    pub fn isomorphism_to(&self, other: &FiniteLattice) -> Option<Vec<usize>> {
        poset_isomorphism(&self.poset, &other.poset)
    }
}

/// Order isomorphism `a -> b` by backtracking with degree pruning.
pub fn poset_isomorphism(a: &FinitePoset, b: &FinitePoset) -> Option<Vec<usize>> {
    let n = a.len();
    if n != b.len() {
        return None;
    }
    let sig = |p: &FinitePoset, x: usize| {
        let below = (0..p.len()).filter(|&y| p.le(y, x)).count();
        let above = (0..p.len()).filter(|&y| p.le(x, y)).count();
        (below, above)
    };
    let sa: Vec<_> = (0..n).map(|x| sig(a, x)).collect();
    let sb: Vec<_> = (0..n).map(|x| sig(b, x)).collect();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        i: usize,
        a: &FinitePoset,
        b: &FinitePoset,
        sa: &[(usize, usize)],
        sb: &[(usize, usize)],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if i == a.len() {
            return true;
        }
        for c in 0..b.len() {
            if used[c] || sa[i] != sb[c] {
                continue;
            }
            if (0..i).all(|j| a.le(j, i) == b.le(map[j], c) && a.le(i, j) == b.le(c, map[j])) {
                map[i] = c;
                used[c] = true;
                if go(i + 1, a, b, sa, sb, map, used) {
                    return true;
                }
                used[c] = false;
            }
        }
        false
    }
    if go(0, a, b, &sa, &sb, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

/// The lattice of downsets of `poset` under inclusion; labels are canonical downset ids.
pub fn downset_lattice(poset: &FinitePoset, limit: usize) -> Result<(FiniteLattice, Vec<Downset>)> {
    let sets = poset.downsets(limit)?;
    let labels: Vec<String> = sets.iter().map(|d| d.id(poset)).collect();
    let le = sets.iter().map(|a| sets.iter().map(|b| a.is_subset(b)).collect()).collect();
    let lattice_poset = FinitePoset::from_relation(labels, le)?;
    // union and intersection of downsets are downsets, so the bounds exist
    let lattice = FiniteLattice::from_poset(lattice_poset)?;
    Ok((lattice, sets))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneMap {
    pub source: FinitePoset,
    pub target: FinitePoset,
    pub table: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(source: FinitePoset, target: FinitePoset, table: Vec<usize>) -> Result<Self> {
        if table.len() != source.len() {
            return Err(Error::InvalidMap(format!(
                "table has {} entries for {} source elements",
                table.len(),
                source.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&t| t >= target.len()) {
            return Err(Error::InvalidMap(format!("target index {bad} out of range")));
        }
        Ok(MonotoneMap { source, target, table })
    }

    pub fn identity(poset: &FinitePoset) -> Self {
        MonotoneMap { source: poset.clone(), target: poset.clone(), table: (0..poset.len()).collect() }
    }

    /// First pair `a <= b` with `f(a) > f(b)` or incomparable.
    pub fn monotonicity_counterexample(&self) -> Option<(usize, usize)> {
        let n = self.source.len();
        for a in 0..n {
            for b in 0..n {
                if self.source.le(a, b) && !self.target.le(self.table[a], self.table[b]) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_monotone(&self) -> bool {
        self.monotonicity_counterexample().is_none()
    }

    pub fn preimage(&self, set: &[bool]) -> Vec<bool> {
        self.table.iter().map(|&t| set[t]).collect()
    }
}

/// All naturally labelled posets on `n` points (`i <= j` only if `i <= j` as integers).
/// Every finite poset is isomorphic to at least one of them.
pub fn natural_posets(n: usize) -> Vec<FinitePoset> {
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
    let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << slots.len()) {
        let mut le = vec![vec![false; n]; n];
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
        }
        for (bit, &(i, j)) in slots.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                le[i][j] = true;
            }
        }
        let transitive = (0..n).all(|i| {
            (0..n).all(|j| !le[i][j] || (0..n).all(|k| !le[j][k] || le[i][k]))
        });
        if transitive {
            out.push(FinitePoset::from_relation(labels.clone(), le).expect("natural poset"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sierpinski() -> FinitePoset {
        FinitePoset::build(&["a", "b"], &[("a", "b")]).unwrap()
    }

    #[test]
    fn build_examples() {
        let p = FinitePoset::build::<&str>(&["a"], &[]).unwrap();
        assert_eq!(p.len(), 1);
        let c = sierpinski();
        assert!(c.le(0, 1) && !c.le(1, 0));
        assert!(matches!(
            FinitePoset::build(&["a", "b"], &[("a", "b"), ("b", "a")]),
            Err(Error::CycleDetected(..))
        ));
        assert!(matches!(FinitePoset::build::<&str>(&["a", "a"], &[]), Err(Error::DuplicateLabel(_))));
        assert!(matches!(FinitePoset::build(&["a"], &[("a", "z")]), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn closure_is_transitive() {
        let p = FinitePoset::build(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert!(p.le(0, 2));
        assert_eq!(p.covers(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn downset_lattice_examples() {
        let (l, _) = downset_lattice(&FinitePoset::antichain(1), DEFAULT_DOWNSET_LIMIT).unwrap();
        assert_eq!(l.len(), 2);

        let (l, sets) = downset_lattice(&FinitePoset::build::<&str>(&["x", "y"], &[]).unwrap(), 100).unwrap();
        let p = FinitePoset::build::<&str>(&["x", "y"], &[]).unwrap();
        let ids: Vec<String> = sets.iter().map(|d| d.id(&p)).collect();
        assert_eq!(ids, vec!["", "x", "y", "x,y"]);
        assert_eq!(l.join(1, 2), 3);
        assert_eq!(l.meet(1, 2), 0);

        let (l, sets) = downset_lattice(&sierpinski(), 100).unwrap();
        let ids: Vec<String> = sets.iter().map(|d| d.id(&sierpinski())).collect();
        assert_eq!(ids, vec!["", "a", "a,b"]);
        assert!(l.le(0, 1) && l.le(1, 2));
    }

    #[test]
    fn size_guard_fails_loudly() {
        let p = FinitePoset::antichain(5);
        assert_eq!(
            downset_lattice(&p, 31).unwrap_err(),
            Error::SizeLimitExceeded { what: "downsets", limit: 31 }
        );
        assert!(downset_lattice(&p, 32).is_ok());
    }

    #[test]
    fn distributivity_examples() {
        // M3: bottom, three atoms, top
        let m3 = FinitePoset::build(
            &["0", "x", "y", "z", "1"],
            &[("0", "x"), ("0", "y"), ("0", "z"), ("x", "1"), ("y", "1"), ("z", "1")],
        )
        .unwrap();
        let m3 = FiniteLattice::from_poset(m3).unwrap();
        assert!(!m3.is_distributive());
        let (b4, _) = downset_lattice(&FinitePoset::antichain(2), 100).unwrap();
        assert!(b4.is_distributive());
        assert!(b4.tables_consistent());
    }

    #[test]
    fn not_a_lattice() {
        let v = FinitePoset::build::<&str>(&["x", "y"], &[]).unwrap();
        assert!(matches!(FiniteLattice::from_poset(v), Err(Error::NotALattice(..))));
    }

    #[test]
    fn monotone_examples() {
        let c3 = FinitePoset::chain(3);
        assert!(MonotoneMap::identity(&c3).is_monotone());
        assert!(MonotoneMap::new(c3.clone(), c3.clone(), vec![0, 0, 0]).unwrap().is_monotone());
        let c2 = FinitePoset::chain(2);
        let swap = MonotoneMap::new(c2.clone(), c2, vec![1, 0]).unwrap();
        assert_eq!(swap.monotonicity_counterexample(), Some((0, 1)));
    }

    #[test]
    fn natural_poset_counts() {
        let counts: Vec<usize> = (0..=4).map(|n| natural_posets(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 7, 40]);
    }

    #[test]
    fn complement_is_downset_of_opposite() {
        let p = FinitePoset::build(&["a", "b", "c"], &[("a", "b"), ("a", "c")]).unwrap();
        let op = p.opposite();
        for d in p.downsets(100).unwrap() {
            let c = d.complement(&p);
            assert!(Downset::new(&op, c.members()).is_ok());
        }
    }
}
