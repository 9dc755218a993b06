//! Sheaves of rational chain complexes on finite spaces and their Verdier duals.
//!
//! The dual is a cosheaf on the de Groot dual, whose opens are the downsets. For a compact
//! saturated `K` the colimit over opens `U ⊇ K` is attained at `U = K` on a finite space, so
//! `VD(X∖K) = fib(F(X) → F(K))`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::order::FinitePoset;
use crate::rational::{qi, Q};
use crate::sheaf::complex::{fiber_map, mapping_cone, mapping_fiber, total_fiber, ChainMap, Mat, RationalComplex};
use crate::sheaf::Opens;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexSheaf {
    opens: Opens,
    values: Vec<RationalComplex>,
    restr: Vec<Vec<Option<ChainMap>>>,
}

/// A covariant assignment on the opens of the de Groot dual, with extension maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexCosheaf {
    opens: Opens,
    values: Vec<RationalComplex>,
    ext: Vec<Vec<Option<ChainMap>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoundtripRow {
    pub open: String,
    pub sheaf: BTreeMap<i32, usize>,
    pub double_dual: BTreeMap<i32, usize>,
    pub quasi_isomorphic: bool,
}

impl RoundtripRow {
    pub fn ok(&self) -> bool {
        self.sheaf == self.double_dual && self.quasi_isomorphic
    }
}

fn subcomplex(gens: &[usize], degrees: &[i32], d: &Mat) -> RationalComplex {
    let mut by_deg: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    for &g in gens {
        by_deg.entry(degrees[g]).or_default().push(g);
    }
    let dims = by_deg.iter().map(|(&k, v)| (k, v.len())).collect();
    let empty = Vec::new();
    let diffs = by_deg
        .iter()
        .map(|(&k, cols)| {
            let rows = by_deg.get(&(k - 1)).unwrap_or(&empty);
            let mut m = Mat::zeros(rows.len(), cols.len());
            for (a, &i) in rows.iter().enumerate() {
                for (b, &j) in cols.iter().enumerate() {
                    m.set(a, b, d.get(i, j).clone());
                }
            }
            (k, m)
        })
        .collect();
    RationalComplex::new(dims, diffs).expect("subcomplex of a complex")
}

fn projection(from: &[usize], to: &[usize], degrees: &[i32], src: &RationalComplex, tgt: &RationalComplex) -> ChainMap {
    let mut maps = BTreeMap::new();
    for k in src.degrees() {
        let cols: Vec<usize> = from.iter().copied().filter(|&g| degrees[g] == k).collect();
        let rows: Vec<usize> = to.iter().copied().filter(|&g| degrees[g] == k).collect();
        let mut m = Mat::zeros(rows.len(), cols.len());
        for (a, r) in rows.iter().enumerate() {
            if let Some(b) = cols.iter().position(|c| c == r) {
                m.set(a, b, Q::one());
            }
        }
        maps.insert(k, m);
    }
    ChainMap::new(src.clone(), tgt.clone(), maps).expect("projection onto a closed summand")
}

impl ComplexSheaf {
    /// General form: a complex per open and restriction components per pair. Missing
    /// restrictions are composed along covers; `F(∅)` defaults to zero.
    pub fn new(
        space: &FinitePoset,
        values: &BTreeMap<String, RationalComplex>,
        restrictions: &BTreeMap<(String, String), BTreeMap<i32, Mat>>,
        limit: usize,
    ) -> Result<Self> {
        let opens = Opens::new(space, limit)?;
        let n = opens.len();
        let mut vals: Vec<Option<RationalComplex>> = vec![None; n];
        for (id, c) in values {
            vals[opens.index_of(id)?] = Some(c.clone());
        }
        vals[opens.empty()].get_or_insert_with(RationalComplex::zero);
        let values: Vec<RationalComplex> = vals
            .into_iter()
            .enumerate()
            .map(|(u, v)| v.ok_or_else(|| Error::InvalidMap(format!("no complex for open {{{}}}", opens.id(u)))))
            .collect::<Result<_>>()?;
        let mut given: BTreeMap<(usize, usize), ChainMap> = BTreeMap::new();
        for ((a, b), comps) in restrictions {
            let (u, v) = (opens.index_of(a)?, opens.index_of(b)?);
            if !opens.subset(v, u) {
                return Err(Error::InvalidMap(format!("{{{b}}} is not contained in {{{a}}}")));
            }
            given.insert((u, v), ChainMap::new(values[u].clone(), values[v].clone(), comps.clone())?);
        }
        let mut restr: Vec<Vec<Option<ChainMap>>> = vec![vec![None; n]; n];
        let mut pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).filter(|&(u, v)| opens.subset(v, u)).collect();
        pairs.sort_by_key(|&(u, v)| opens.members(u).len() - opens.members(v).len());
        for (u, v) in pairs {
            let map = if u == v {
                ChainMap::identity(&values[u])
            } else if let Some(m) = given.get(&(u, v)) {
                m.clone()
            } else if values[u].total_dim() == 0 || values[v].total_dim() == 0 {
                ChainMap::zero(&values[u], &values[v])
            } else {
                let w = opens.step_down(u, v).expect("a cover below u above v");
                let first = given.get(&(u, w)).ok_or_else(|| {
                    Error::InvalidMap(format!("missing restriction {{{}}} > {{{}}}", opens.id(u), opens.id(w)))
                })?;
                first.compose(restr[w][v].as_ref().expect("shorter gap already filled"))?
            };
            restr[u][v] = Some(map);
        }
        let f = ComplexSheaf { opens, values, restr };
        if let Some(msg) = f.functoriality_counterexample() {
            return Err(Error::NotFunctorial(msg));
        }
        Ok(f)
    }

    /// Skyscraper presentation: generator `j` sits at `points[j]` in degree `degrees[j]`, and
    /// `d e_j = Σ_i D[i][j] e_i` may only involve `i` with `points[i] ≤ points[j]`. Sections
    /// over `U` are spanned by the generators sitting in `U`; restriction is projection.
    pub fn from_generators(space: &FinitePoset, points: &[usize], degrees: &[i32], d: &Mat, limit: usize) -> Result<Self> {
        let n = points.len();
        if degrees.len() != n || d.rows() != n || d.cols() != n {
            return Err(Error::DimensionMismatch(format!("{n} generators need an {n}x{n} differential")));
        }
        if let Some(&p) = points.iter().find(|&&p| p >= space.len()) {
            return Err(Error::InvalidElement(p.to_string()));
        }
        for i in 0..n {
            for j in 0..n {
                if d.get(i, j).is_zero() {
                    continue;
                }
                if degrees[i] != degrees[j] - 1 {
                    return Err(Error::DimensionMismatch(format!("d e_{j} has a component on e_{i} of the wrong degree")));
                }
                if !space.le(points[i], points[j]) {
                    return Err(Error::InvalidMap(format!(
                        "d e_{j} reaches {} which is not below {}",
                        space.label(points[i]),
                        space.label(points[j])
                    )));
                }
            }
        }
        if !d.mul(d)?.is_zero() {
            let k = (0..n).find(|&j| (0..n).any(|i| !d.mul(d).unwrap().get(i, j).is_zero())).map_or(0, |j| degrees[j]);
            return Err(Error::DifferentialSquareNonzero(k));
        }
        let opens = Opens::new(space, limit)?;
        let gens: Vec<Vec<usize>> =
            (0..opens.len()).map(|u| (0..n).filter(|&g| opens.contains_point(u, points[g])).collect()).collect();
        let values: Vec<RationalComplex> = gens.iter().map(|g| subcomplex(g, degrees, d)).collect();
        let m = opens.len();
        let restr = (0..m)
            .map(|u| {
                (0..m)
                    .map(|v| {
                        opens
                            .subset(v, u)
                            .then(|| projection(&gens[u], &gens[v], degrees, &values[u], &values[v]))
                    })
                    .collect()
            })
            .collect();
        Ok(ComplexSheaf { opens, values, restr })
    }

    pub fn opens(&self) -> &Opens {
        &self.opens
    }

    pub fn value(&self, u: usize) -> &RationalComplex {
        &self.values[u]
    }

    pub fn restriction(&self, u: usize, v: usize) -> Option<&ChainMap> {
        self.restr[u][v].as_ref()
    }

    pub fn functoriality_counterexample(&self) -> Option<String> {
        let n = self.opens.len();
        for u in 0..n {
            for v in 0..n {
                let Some(uv) = &self.restr[u][v] else { continue };
                for w in 0..n {
                    if u == v || v == w {
                        continue;
                    }
                    let (Some(vw), Some(uw)) = (&self.restr[v][w], &self.restr[u][w]) else { continue };
                    if uv.compose(vw).ok().as_ref() != Some(uw) {
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

    /// `F(∅)` acyclic and every square `F(U∪V), F(U), F(V), F(U∩V)` has acyclic total fiber.
    pub fn stable_excision_counterexample(&self) -> Option<String> {
        let o = &self.opens;
        if !self.values[o.empty()].is_acyclic() {
            return Some("F(∅) is not acyclic".into());
        }
        for (u, v) in o.incomparable_pairs() {
            let (j, m) = (o.union(u, v), o.intersection(u, v));
            let r = |a: usize, b: usize| self.restr[a][b].as_ref().unwrap();
            let tf = total_fiber(r(j, u), r(v, m), r(j, v), r(u, m)).expect("square of restrictions commutes");
            if !tf.is_acyclic() {
                return Some(format!(
                    "square on {{{}}}, {{{}}} has total fiber homology {:?}",
                    o.id(u),
                    o.id(v),
                    tf.homology()
                ));
            }
        }
        None
    }

    pub fn is_stable_excisive(&self) -> bool {
        self.stable_excision_counterexample().is_none()
    }

    pub fn homology_by_open(&self) -> BTreeMap<String, BTreeMap<i32, usize>> {
        (0..self.opens.len()).map(|u| (self.opens.id(u), self.values[u].homology())).collect()
    }
}

impl ComplexCosheaf {
    pub fn opens(&self) -> &Opens {
        &self.opens
    }

    pub fn value(&self, w: usize) -> &RationalComplex {
        &self.values[w]
    }

    pub fn extension(&self, w: usize, w2: usize) -> Option<&ChainMap> {
        self.ext[w][w2].as_ref()
    }

    /// The cosheaf form of stable excision: `G(∅)` acyclic and every square of extensions
    /// `G(W∩W') → G(W), G(W') → G(W∪W')` is cocartesian, which in a stable setting is
    /// the same as having acyclic total fiber.
    pub fn stable_excision_counterexample(&self) -> Option<String> {
        let o = &self.opens;
        if !self.values[o.empty()].is_acyclic() {
            return Some("G(∅) is not acyclic".into());
        }
        for (u, v) in o.incomparable_pairs() {
            let (j, m) = (o.union(u, v), o.intersection(u, v));
            let e = |a: usize, b: usize| self.ext[a][b].as_ref().unwrap();
            let tf = total_fiber(e(m, u), e(v, j), e(m, v), e(u, j)).expect("square of extensions commutes");
            if !tf.is_acyclic() {
                return Some(format!("square on {{{}}}, {{{}}} is not cocartesian", o.id(u), o.id(v)));
            }
        }
        None
    }

    pub fn is_stable_excisive(&self) -> bool {
        self.stable_excision_counterexample().is_none()
    }

    pub fn homology_by_open(&self) -> BTreeMap<String, BTreeMap<i32, usize>> {
        (0..self.opens.len()).map(|u| (self.opens.id(u), self.values[u].homology())).collect()
    }
}

fn dual_to_sheaf_open(f: &ComplexSheaf, dual: &Opens, w: usize) -> usize {
    let complement = dual.complement_members(w);
    let id = f.opens.space().subset_id(&complement);
    f.opens.index_of(&id).expect("complement of a downset is an upper set")
}

/// `VD(F)(W) = fib(F(X) → F(X∖W))` for every downset `W`, with the induced extension maps.
pub fn verdier_dual(f: &ComplexSheaf, limit: usize) -> Result<ComplexCosheaf> {
    if let Some(msg) = f.stable_excision_counterexample() {
        return Err(Error::NotStableExcisive(msg));
    }
    let dual = Opens::new(&f.opens.space().opposite(), limit)?;
    let x = f.opens.whole();
    let n = dual.len();
    let comp: Vec<usize> = (0..n).map(|w| dual_to_sheaf_open(f, &dual, w)).collect();
    let r = |a: usize, b: usize| f.restr[a][b].as_ref().unwrap();
    let values: Vec<RationalComplex> = (0..n).map(|w| mapping_fiber(r(x, comp[w]))).collect();
    let id = ChainMap::identity(&f.values[x]);
    let mut ext = vec![vec![None; n]; n];
    for w in 0..n {
        for w2 in 0..n {
            if dual.subset(w, w2) {
                ext[w][w2] = Some(fiber_map(r(x, comp[w]), r(x, comp[w2]), &id, r(comp[w], comp[w2]))?);
            }
        }
    }
    let out = ComplexCosheaf { opens: dual, values, ext };
    if let Some(msg) = out.stable_excision_counterexample() {
        return Err(Error::NotStableExcisive(format!("dual: {msg}")));
    }
    Ok(out)
}

/// Rebuilds `F(U) = cofib(VD(X∖U) → VD(X))` and compares it with `F(U)` through the chain
/// map `(x, y, a, b) ↦ r(x) + b`, which is checked to be a quasi-isomorphism.
pub fn verdier_roundtrip(f: &ComplexSheaf, limit: usize) -> Result<Vec<RoundtripRow>> {
    let g = verdier_dual(f, limit)?;
    let o = &f.opens;
    let (x, empty) = (o.whole(), o.empty());
    let whole_dual = g.opens.whole();
    let mut rows = Vec::with_capacity(o.len());
    for u in 0..o.len() {
        let id = f.opens.space().subset_id(&o.complement_members(u));
        let w = g.opens.index_of(&id)?;
        let iota = g.ext[w][whole_dual].as_ref().expect("every downset is below the whole space");
        let rebuilt = mapping_cone(iota);
        let (fx, fe, fu) = (&f.values[x], &f.values[empty], &f.values[u]);
        let r_u = f.restr[x][u].as_ref().unwrap();
        let mut maps = BTreeMap::new();
        for k in rebuilt.degrees() {
            let blocks = vec![vec![Some(r_u.at(k)), None, None, Some(Mat::identity(fu.dim(k)))]];
            let m = Mat::block(&[fu.dim(k)], &[fx.dim(k), fe.dim(k + 1), fx.dim(k - 1), fu.dim(k)], &blocks)?;
            maps.insert(k, m);
        }
        let phi = ChainMap::new(rebuilt.clone(), fu.clone(), maps)?;
        rows.push(RoundtripRow {
            open: o.id(u),
            sheaf: fu.homology(),
            double_dual: rebuilt.homology(),
            quasi_isomorphic: phi.is_quasi_isomorphism(),
        });
    }
    Ok(rows)
}

/// A seeded random sheaf: a sum of shifted point skyscrapers and cancelling pairs, conjugated
/// by a random unipotent automorphism that respects the order of the points.
pub fn random_sheaf(space: &FinitePoset, seed: u64, max_dim: usize, limit: usize) -> Result<ComplexSheaf> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let target = rng.gen_range(1..=max_dim.max(1));
    let mut points = Vec::new();
    let mut degrees = Vec::new();
    let mut pairs = Vec::new();
    while points.len() < target {
        let z = rng.gen_range(0..space.len());
        if points.len() + 2 <= target && rng.gen_bool(0.5) {
            let below: Vec<usize> = (0..space.len()).filter(|&y| space.le(y, z)).collect();
            let y = *below.choose(&mut rng).expect("z is below itself");
            let k = rng.gen_range(1..=2);
            pairs.push((points.len(), points.len() + 1));
            points.extend([z, y]);
            degrees.extend([k, k - 1]);
        } else {
            points.push(z);
            degrees.push(rng.gen_range(0..=2));
        }
    }
    let n = points.len();
    let mut d = Mat::zeros(n, n);
    for &(j, i) in &pairs {
        d.set(i, j, Q::one());
    }
    let pos: Vec<usize> = {
        let ext = space.linear_extension();
        let mut pos = vec![0; space.len()];
        for (i, &x) in ext.iter().enumerate() {
            pos[x] = i;
        }
        pos
    };
    let mut nil = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let ordered = (pos[points[i]], i) < (pos[points[j]], j);
            if ordered && degrees[i] == degrees[j] && space.le(points[i], points[j]) && rng.gen_bool(0.5) {
                nil.set(i, j, qi(rng.gen_range(-2..=2)));
            }
        }
    }
    let p = Mat::identity(n).add(&nil)?;
    let neg = nil.scale(&-Q::one());
    let mut p_inv = Mat::identity(n);
    let mut power = Mat::identity(n);
    for _ in 0..n {
        power = power.mul(&neg)?;
        p_inv = p_inv.add(&power)?;
    }
    let conj = p.mul(&d)?.mul(&p_inv)?;
    ComplexSheaf::from_generators(space, &points, &degrees, &conj, limit)
}
