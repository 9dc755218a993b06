//! Idealoids on finite posets: absorbing sub-relations of the order.

pub mod dense;
pub mod glued;
pub mod minkowski;
pub mod symbolic;

use crate::error::{Error, Result};
use crate::order::FinitePoset;
use crate::rational::Q;

pub use symbolic::{RelationKind, SymbolicIdealoid};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Idealoid {
    poset: FinitePoset,
    rel: Vec<Vec<bool>>,
}

impl Idealoid {
    /// Validates that every pair lies in the order; no closure is applied.
    pub fn from_pairs(poset: FinitePoset, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = poset.len();
        let mut rel = vec![vec![false; n]; n];
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::InvalidElement(format!("{a} or {b}")));
            }
            if !poset.le(a, b) {
                return Err(Error::PairNotInOrder(poset.label(a).into(), poset.label(b).into()));
            }
            rel[a][b] = true;
        }
        Ok(Idealoid { poset, rel })
    }

    pub fn from_labels<S: AsRef<str>>(poset: FinitePoset, pairs: &[(S, S)]) -> Result<Self> {
        let idx = pairs
            .iter()
            .map(|(a, b)| Ok((poset.index_of(a.as_ref())?, poset.index_of(b.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_pairs(poset, &idx)
    }

    /// Builds a relation from a predicate, keeping only pairs inside the order.
    pub fn from_fn(poset: FinitePoset, f: impl Fn(usize, usize) -> bool) -> Self {
        let n = poset.len();
        let rel = (0..n).map(|a| (0..n).map(|b| poset.le(a, b) && f(a, b)).collect()).collect();
        Idealoid { poset, rel }
    }

    pub fn full(poset: &FinitePoset) -> Self {
        Self::from_fn(poset.clone(), |_, _| true)
    }

    pub fn strict(poset: &FinitePoset) -> Self {
        Self::from_fn(poset.clone(), |a, b| a != b)
    }

    pub fn empty(poset: &FinitePoset) -> Self {
        Self::from_fn(poset.clone(), |_, _| false)
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    #[inline]
    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.rel[a][b]
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.poset.len();
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| self.rel[a][b]).collect()
    }

    pub fn label_pairs(&self) -> Vec<(String, String)> {
        self.pairs()
            .into_iter()
            .map(|(a, b)| (self.poset.label(a).to_string(), self.poset.label(b).to_string()))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.rel.iter().map(|r| r.iter().filter(|&&x| x).count()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_subset(&self, other: &Idealoid) -> bool {
        self.pairs().into_iter().all(|(a, b)| other.contains(a, b))
    }

    /// First `(a', b')` forced by absorption but missing.
    pub fn absorption_counterexample(&self) -> Option<(usize, usize)> {
        let n = self.poset.len();
        for (a, b) in self.pairs() {
            for a2 in 0..n {
                if !self.poset.le(a2, a) {
                    continue;
                }
                for b2 in 0..n {
                    if self.poset.le(b, b2) && !self.rel[a2][b2] {
                        return Some((a2, b2));
                    }
                }
            }
        }
        None
    }

    pub fn is_idealoid(&self) -> bool {
        self.absorption_counterexample().is_none()
    }

    /// Smallest idealoid containing the relation.
    pub fn absorption_closure(&self) -> Self {
        let n = self.poset.len();
        let p = &self.poset;
        Self::from_fn(p.clone(), |a2, b2| {
            (0..n).any(|a| p.le(a2, a) && (0..n).any(|b| self.rel[a][b] && p.le(b, b2)))
        })
    }

    /// Least-index `c` with `(a,c)` and `(c,b)` in the relation.
    pub fn interpolant(&self, a: usize, b: usize) -> Option<usize> {
        (0..self.poset.len()).find(|&c| self.rel[a][c] && self.rel[c][b])
    }

    pub fn subdivision_counterexample(&self) -> Option<(usize, usize)> {
        self.pairs().into_iter().find(|&(a, b)| self.interpolant(a, b).is_none())
    }

    pub fn is_subdivisible(&self) -> bool {
        self.subdivision_counterexample().is_none()
    }

    /// Greatest subdivisible sub-idealoid, as the greatest fixpoint of pruning pairs
    /// without an interpolant.
    pub fn sd_core(&self) -> Idealoid {
        let mut cur = self.clone();
        loop {
            let n = cur.poset.len();
            let mut next = cur.rel.clone();
            let mut changed = false;
            for a in 0..n {
                for b in 0..n {
                    if cur.rel[a][b] && cur.interpolant(a, b).is_none() {
                        next[a][b] = false;
                        changed = true;
                    }
                }
            }
            if !changed {
                return cur;
            }
            cur.rel = next;
        }
    }

    /// A chain from `a` to `b` indexed by `?⁻¹(m/2^depth)`; each value is the least-index
    /// interpolant of its dyadic neighbours.
    pub fn subdivision_chain(&self, a: usize, b: usize, depth: u32) -> Result<Chain<usize>> {
        let core = self.sd_core();
        if !core.contains(a, b) {
            return Err(Error::NotInCore(self.poset.label(a).into(), self.poset.label(b).into()));
        }
        bisect(a, b, depth, |x, y| {
            core.interpolant(*x, *y).ok_or_else(|| Error::WitnessSearchFailed("finite core".into()))
        })
    }

    /// Checks every chain invariant against this relation.
    pub fn validate_chain(&self, chain: &Chain<usize>) -> bool {
        chain.index_ok()
            && chain.values.windows(2).all(|w| self.poset.le(w[0], w[1]))
            && chain.all_pairs(|x, y| self.contains(*x, *y))
    }

    /// Starting at `seed`, repeatedly takes the least-index successor along the relation.
    pub fn sequentialize(&self, seed: usize, n: usize) -> Result<Vec<usize>> {
        let mut out = Vec::with_capacity(n);
        let mut cur = seed;
        for i in 0..n {
            out.push(cur);
            if i + 1 < n {
                cur = (0..self.poset.len())
                    .find(|&q| self.rel[cur][q])
                    .ok_or_else(|| Error::NoSuccessor(self.poset.label(cur).into()))?;
            }
        }
        Ok(out)
    }

    /// Checks that `members` is an ideal: nonempty, down-closed and directed.
    pub fn check_ideal(&self, members: &[usize]) -> Result<()> {
        check_ideal(&self.poset, members)
    }

    /// Every member has a successor inside the ideal along the relation.
    pub fn is_restricted_ideal(&self, members: &[usize]) -> Result<bool> {
        self.check_ideal(members)?;
        Ok(self.unrestricted_member(members).is_none())
    }

    pub fn unrestricted_member(&self, members: &[usize]) -> Option<usize> {
        members.iter().copied().find(|&p| !members.iter().any(|&q| self.rel[p][q]))
    }
}

pub fn check_ideal(poset: &FinitePoset, members: &[usize]) -> Result<()> {
    if members.is_empty() {
        return Err(Error::NotAnIdeal("empty".into()));
    }
    let mut mask = vec![false; poset.len()];
    for &m in members {
        mask[m] = true;
    }
    if !poset.is_down_closed(&mask) {
        return Err(Error::NotAnIdeal(format!("{{{}}} is not down-closed", poset.subset_id(members))));
    }
    for &x in members {
        for &y in members {
            if !members.iter().any(|&z| poset.le(x, z) && poset.le(y, z)) {
                return Err(Error::NotAnIdeal(format!(
                    "`{}` and `{}` have no upper bound inside",
                    poset.label(x),
                    poset.label(y)
                )));
            }
        }
    }
    Ok(())
}

/// A diagram `Q ∩ [0,1] ⊇ index → values`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain<T> {
    pub index: Vec<Q>,
    pub values: Vec<T>,
}

impl<T> Chain<T> {
    /// Strictly increasing, starts at 0 and ends at 1.
    pub fn index_ok(&self) -> bool {
        use num_traits::{One, Zero};
        self.index.len() == self.values.len()
            && self.index.first().is_some_and(|x| x.is_zero())
            && self.index.last().is_some_and(|x| x.is_one())
            && self.index.windows(2).all(|w| w[0] < w[1])
    }

    pub fn all_pairs(&self, rel: impl Fn(&T, &T) -> bool) -> bool {
        let n = self.values.len();
        (0..n).all(|i| ((i + 1)..n).all(|j| rel(&self.values[i], &self.values[j])))
    }
}

/// Iterated bisection on the dyadic grid, reindexed through `?⁻¹`.
pub fn bisect<T: Clone>(
    a: T,
    b: T,
    depth: u32,
    mut interpolate: impl FnMut(&T, &T) -> Result<T>,
) -> Result<Chain<T>> {
    let mut values = vec![a, b];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(values.len() * 2 - 1);
        for w in values.windows(2) {
            next.push(w[0].clone());
            next.push(interpolate(&w[0], &w[1])?);
        }
        next.push(values.last().cloned().expect("nonempty"));
        values = next;
    }
    let steps = 1i64 << depth;
    let index = (0..=steps)
        .map(|m| minkowski::inverse(&crate::rational::q(m, steps)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Chain { index, values })
}

/// The poset of arrows `a → a'` (`a ≤ a'`), ordered componentwise. Labels are `a->a'`.
pub fn arrow_poset(p: &FinitePoset) -> (FinitePoset, Vec<(usize, usize)>) {
    let n = p.len();
    let arrows: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| p.le(a, b)).collect();
    let labels = arrows.iter().map(|&(a, b)| format!("{}->{}", p.label(a), p.label(b))).collect();
    let le = arrows
        .iter()
        .map(|&(a, a2)| arrows.iter().map(|&(b, b2)| p.le(a, b) && p.le(a2, b2)).collect())
        .collect();
    (FinitePoset::from_relation(labels, le).expect("arrow poset"), arrows)
}

#[derive(Clone, Debug)]
pub struct ArrowIdealoid {
    pub base: Idealoid,
    pub arrows: Vec<(usize, usize)>,
    pub idealoid: Idealoid,
}

impl ArrowIdealoid {
    pub fn new(base: &Idealoid) -> Self {
        let (poset, arrows) = arrow_poset(base.poset());
        let idealoid = Idealoid::from_fn(poset, |x, y| {
            let (a, a2) = arrows[x];
            let (b, b2) = arrows[y];
            base.contains(a, b) && base.contains(a2, b2)
        });
        ArrowIdealoid { base: base.clone(), arrows, idealoid }
    }

    pub fn arrow_index(&self, a: usize, a2: usize) -> Option<usize> {
        self.arrows.iter().position(|&x| x == (a, a2))
    }

    /// Least-index `c` with `a' ≤ c`, `b ≤ c` and `(c, b')` in the base relation.
    pub fn buffer(&self, x: (usize, usize), y: (usize, usize)) -> Option<usize> {
        let p = self.base.poset();
        let ((_, a2), (b, b2)) = (x, y);
        (0..p.len()).find(|&c| p.le(a2, c) && p.le(b, c) && self.base.contains(c, b2))
    }

    pub fn buffer_check(&self, x: (usize, usize), y: (usize, usize)) -> bool {
        self.buffer(x, y).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::FinitePoset;

    #[test]
    fn idealoid_examples() {
        let c3 = FinitePoset::chain(3);
        assert!(Idealoid::full(&c3).is_idealoid());
        assert!(!Idealoid::from_pairs(c3.clone(), &[(1, 2)]).unwrap().is_idealoid());
        assert!(Idealoid::from_pairs(c3.clone(), &[(0, 2)]).unwrap().is_idealoid());
        assert!(Idealoid::empty(&c3).is_idealoid());
        assert!(matches!(Idealoid::from_pairs(c3, &[(2, 0)]), Err(Error::PairNotInOrder(..))));
    }

    #[test]
    fn subdivisible_examples() {
        let c4 = FinitePoset::chain(4);
        assert!(Idealoid::full(&c4).is_subdivisible());
        let strict = Idealoid::strict(&c4);
        assert_eq!(strict.subdivision_counterexample(), Some((0, 1)));
        assert!(Idealoid::empty(&c4).is_subdivisible());
        assert!(strict.sd_core().is_empty());
        assert_eq!(Idealoid::full(&c4).sd_core(), Idealoid::full(&c4));
    }

    #[test]
    fn chain_examples() {
        let c2 = FinitePoset::chain(2);
        let ch = Idealoid::full(&c2).subdivision_chain(0, 1, 1).unwrap();
        assert_eq!(ch.values, vec![0, 0, 1]);
        assert_eq!(ch.index, vec![crate::rational::qi(0), crate::rational::q(1, 2), crate::rational::qi(1)]);
        let c4 = FinitePoset::chain(4);
        assert!(matches!(Idealoid::strict(&c4).subdivision_chain(0, 3, 2), Err(Error::NotInCore(..))));
    }

    #[test]
    fn sequentialize_examples() {
        let c4 = FinitePoset::chain(4);
        assert_eq!(Idealoid::full(&c4).sequentialize(0, 3).unwrap(), vec![0, 0, 0]);
        assert_eq!(Idealoid::strict(&c4).sequentialize(3, 2), Err(Error::NoSuccessor("3".into())));
        assert_eq!(Idealoid::strict(&c4).sequentialize(0, 4).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn restricted_ideal_examples() {
        let c3 = FinitePoset::chain(3);
        let full = Idealoid::full(&c3);
        assert!(full.is_restricted_ideal(&[0, 1]).unwrap());
        assert!(matches!(full.is_restricted_ideal(&[1]), Err(Error::NotAnIdeal(_))));
        assert!(!Idealoid::strict(&c3).is_restricted_ideal(&[0, 1]).unwrap());
    }

    #[test]
    fn buffer_example() {
        let c4 = FinitePoset::chain(4);
        let arrows = ArrowIdealoid::new(&Idealoid::strict(&c4));
        let x = arrows.arrow_index(0, 2).unwrap();
        let y = arrows.arrow_index(1, 3).unwrap();
        assert!(arrows.idealoid.contains(x, y));
        assert_eq!(arrows.buffer((0, 2), (1, 3)), Some(2));
        assert!(!arrows.buffer_check((0, 3), (1, 3)));
    }

    #[test]
    fn arrow_of_full_is_subdivisible() {
        let p = FinitePoset::build(&["a", "b", "c"], &[("a", "b"), ("a", "c")]).unwrap();
        assert!(ArrowIdealoid::new(&Idealoid::full(&p)).idealoid.is_subdivisible());
    }
}
