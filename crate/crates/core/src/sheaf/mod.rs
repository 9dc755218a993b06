//! Presheaves of finite sets and of rational chain complexes.

pub mod complex;
pub mod jump;
pub mod set;
pub mod verdier;

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::order::FinitePoset;

pub use complex::{mapping_cone, mapping_fiber, total_fiber, ChainMap, Mat, RationalComplex};
pub use jump::{ApproachingFamily, JumpPresheaf, KSheafReport, Side};
pub use set::{SetPresheaf, SheafifyReport};
pub use verdier::{random_sheaf, verdier_dual, verdier_roundtrip, ComplexCosheaf, ComplexSheaf, RoundtripRow};

/// The opens of a finite space (upper sets of its specialization order), ordered by size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Opens {
    space: FinitePoset,
    sets: Vec<Vec<usize>>,
    masks: Vec<u64>,
    by_mask: HashMap<u64, usize>,
}

impl Opens {
    pub fn new(space: &FinitePoset, limit: usize) -> Result<Self> {
        if space.len() > 63 {
            return Err(Error::SizeLimitExceeded { what: "points", limit: 63 });
        }
        let sets: Vec<Vec<usize>> =
            space.opposite().downsets(limit)?.into_iter().map(|d| d.members().to_vec()).collect();
        let masks: Vec<u64> = sets.iter().map(|s| s.iter().fold(0u64, |m, &i| m | 1 << i)).collect();
        let by_mask = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        Ok(Opens { space: space.clone(), sets, masks, by_mask })
    }

    pub fn space(&self) -> &FinitePoset {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn members(&self, u: usize) -> &[usize] {
        &self.sets[u]
    }

    pub fn id(&self, u: usize) -> String {
        self.space.subset_id(&self.sets[u])
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        let members = self.space.parse_subset_id(id)?;
        let mask = members.iter().fold(0u64, |m, &i| m | 1 << i);
        self.by_mask.get(&mask).copied().ok_or_else(|| Error::InvalidElement(format!("{{{id}}} is not open")))
    }

    pub fn empty(&self) -> usize {
        0
    }

    pub fn whole(&self) -> usize {
        self.sets.len() - 1
    }

    pub fn contains_point(&self, u: usize, x: usize) -> bool {
        self.masks[u] >> x & 1 == 1
    }

    pub fn subset(&self, v: usize, u: usize) -> bool {
        self.masks[v] & !self.masks[u] == 0
    }

    pub fn union(&self, u: usize, v: usize) -> usize {
        self.by_mask[&(self.masks[u] | self.masks[v])]
    }

    pub fn intersection(&self, u: usize, v: usize) -> usize {
        self.by_mask[&(self.masks[u] & self.masks[v])]
    }

    /// The complement of an open, which is a downset of the space.
    pub fn complement_members(&self, u: usize) -> Vec<usize> {
        (0..self.space.len()).filter(|&x| !self.contains_point(u, x)).collect()
    }

    /// Unordered pairs of incomparable opens; comparable pairs give degenerate squares.
    pub fn incomparable_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !self.subset(u, v) && !self.subset(v, u))
            .collect()
    }

    /// Pairs `(u, v)` with `v ⊂ u` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if u != v
                    && self.subset(v, u)
                    && !(0..n).any(|w| w != u && w != v && self.subset(v, w) && self.subset(w, u))
                {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// For `v ⊂ u`, an open `w` covered by `u` with `v ⊆ w`.
    pub(crate) fn step_down(&self, u: usize, v: usize) -> Option<usize> {
        let n = self.len();
        (0..n).find(|&w| {
            w != u
                && self.subset(v, w)
                && self.subset(w, u)
                && !(0..n).any(|z| z != u && z != w && self.subset(w, z) && self.subset(z, u))
        })
    }
}
