//! Bounded chain complexes of finite-dimensional rational vector spaces.
//!
//! Homological grading: `d_k : C_k → C_{k-1}`. Matrices act on column vectors.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, Q};

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows).map(|i| (0..self.cols).map(|j| fmt_q(self.get(i, j))).collect()).collect();
        write!(f, "Mat{rows:?}")
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>, cols: usize) -> Result<Self> {
        let r = rows.len();
        if rows.iter().any(|row| row.len() != cols) {
            return Err(Error::DimensionMismatch(format!("rows of a {r}x{cols} matrix have unequal length")));
        }
        Ok(Mat { rows: r, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Q) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, other: &Mat) -> Result<Mat> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        Ok(Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() })
    }

    /// Assembles a block matrix; `blocks[i][j]` must be `row_dims[i] x col_dims[j]`.
    pub fn block(row_dims: &[usize], col_dims: &[usize], blocks: &[Vec<Option<Mat>>]) -> Result<Mat> {
        let rows: usize = row_dims.iter().sum();
        let cols: usize = col_dims.iter().sum();
        let mut out = Mat::zeros(rows, cols);
        let mut r0 = 0;
        for (bi, &rd) in row_dims.iter().enumerate() {
            let mut c0 = 0;
            for (bj, &cd) in col_dims.iter().enumerate() {
                if let Some(b) = &blocks[bi][bj] {
                    if (b.rows, b.cols) != (rd, cd) {
                        return Err(Error::DimensionMismatch(format!(
                            "block ({bi},{bj}) is {}x{}, expected {rd}x{cd}",
                            b.rows, b.cols
                        )));
                    }
                    for i in 0..rd {
                        for j in 0..cd {
                            out.set(r0 + i, c0 + j, b.get(i, j).clone());
                        }
                    }
                }
                c0 += cd;
            }
            r0 += rd;
        }
        Ok(out)
    }

    /// Rank by fraction-free (Bareiss) elimination after clearing row denominators.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
            })
            .collect();
        let (m, n) = (self.rows, self.cols);
        let mut rank = 0;
        let mut prev = BigInt::one();
        for col in 0..n {
            if rank == m {
                break;
            }
            let Some(p) = (rank..m).find(|&r| !a[r][col].is_zero()) else { continue };
            a.swap(rank, p);
            for r in (rank + 1)..m {
                for c in (col + 1)..n {
                    let v = (&a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c]) / &prev;
                    a[r][c] = v;
                }
                a[r][col] = BigInt::zero();
            }
            prev = a[rank][col].abs();
            if prev.is_zero() {
                prev = BigInt::one();
            }
            rank += 1;
        }
        rank
    }
}

/// `C_k` for `k` in a finite range, with differentials `d_k : C_k → C_{k-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RationalComplex {
    dims: BTreeMap<i32, usize>,
    diffs: BTreeMap<i32, Mat>,
}

impl RationalComplex {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Checks shapes and `d ∘ d = 0`.
    pub fn new(dims: BTreeMap<i32, usize>, diffs: BTreeMap<i32, Mat>) -> Result<Self> {
        let dims: BTreeMap<i32, usize> = dims.into_iter().filter(|&(_, n)| n > 0).collect();
        let c = RationalComplex { dims, diffs: BTreeMap::new() };
        let mut out = c.clone();
        for (k, m) in diffs {
            if (m.rows, m.cols) != (c.dim(k - 1), c.dim(k)) {
                return Err(Error::DimensionMismatch(format!(
                    "d_{k} is {}x{}, expected {}x{}",
                    m.rows,
                    m.cols,
                    c.dim(k - 1),
                    c.dim(k)
                )));
            }
            if !m.is_zero() {
                out.diffs.insert(k, m);
            }
        }
        for &k in out.diffs.keys() {
            if !out.d(k - 1).mul(&out.d(k))?.is_zero() {
                return Err(Error::DifferentialSquareNonzero(k));
            }
        }
        Ok(out)
    }

    /// One copy of `Q` in degree `k`.
    pub fn unit(k: i32) -> Self {
        RationalComplex { dims: [(k, 1)].into_iter().collect(), diffs: BTreeMap::new() }
    }

    pub fn dim(&self, k: i32) -> usize {
        self.dims.get(&k).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn d(&self, k: i32) -> Mat {
        self.diffs.get(&k).cloned().unwrap_or_else(|| Mat::zeros(self.dim(k - 1), self.dim(k)))
    }

    /// Degrees with nonzero chain groups.
    pub fn degrees(&self) -> Vec<i32> {
        self.dims.keys().copied().collect()
    }

    pub fn dims(&self) -> &BTreeMap<i32, usize> {
        &self.dims
    }

    pub fn diffs(&self) -> &BTreeMap<i32, Mat> {
        &self.diffs
    }

    fn range(&self) -> Option<(i32, i32)> {
        Some((*self.dims.keys().next()?, *self.dims.keys().next_back()?))
    }

    /// `dim H_k = dim C_k - rank d_k - rank d_{k+1}`, for every degree with `H_k ≠ 0`.
    pub fn homology(&self) -> BTreeMap<i32, usize> {
        let ranks: BTreeMap<i32, usize> = self.diffs.iter().map(|(&k, m)| (k, m.rank())).collect();
        let r = |k: i32| ranks.get(&k).copied().unwrap_or(0);
        self.dims
            .iter()
            .map(|(&k, &n)| (k, n - r(k) - r(k + 1)))
            .filter(|&(_, h)| h > 0)
            .collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.homology().is_empty()
    }

    pub fn direct_sum(&self, other: &RationalComplex) -> RationalComplex {
        let mut dims = self.dims.clone();
        for (&k, &n) in &other.dims {
            *dims.entry(k).or_insert(0) += n;
        }
        let keys: Vec<i32> = self.diffs.keys().chain(other.diffs.keys()).copied().collect();
        let diffs = keys
            .into_iter()
            .map(|k| {
                let m = Mat::block(
                    &[self.dim(k - 1), other.dim(k - 1)],
                    &[self.dim(k), other.dim(k)],
                    &[vec![Some(self.d(k)), None], vec![None, Some(other.d(k))]],
                )
                .expect("block shapes");
                (k, m)
            })
            .collect();
        RationalComplex::new(dims, diffs).expect("direct sum of complexes")
    }

    /// `C[n]_k = C_{k-n}`, differentials negated for odd `n`.
    pub fn shift(&self, n: i32) -> RationalComplex {
        let sign = if n % 2 == 0 { Q::one() } else { -Q::one() };
        RationalComplex {
            dims: self.dims.iter().map(|(&k, &d)| (k + n, d)).collect(),
            diffs: self.diffs.iter().map(|(&k, m)| (k + n, m.scale(&sign))).collect(),
        }
    }
}

/// A degreewise map `f_k : A_k → B_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub source: RationalComplex,
    pub target: RationalComplex,
    maps: BTreeMap<i32, Mat>,
}

impl ChainMap {
    /// Checks shapes and `d f = f d`.
    pub fn new(source: RationalComplex, target: RationalComplex, maps: BTreeMap<i32, Mat>) -> Result<Self> {
        for (&k, m) in &maps {
            if (m.rows, m.cols) != (target.dim(k), source.dim(k)) {
                return Err(Error::DimensionMismatch(format!("component f_{k} has the wrong shape")));
            }
        }
        let f = ChainMap { source, target, maps };
        let degrees: Vec<i32> = f.source.degrees().into_iter().chain(f.target.degrees()).collect();
        for k in degrees {
            let lhs = f.target.d(k).mul(&f.at(k))?;
            let rhs = f.at(k - 1).mul(&f.source.d(k))?;
            if lhs != rhs {
                return Err(Error::NotFunctorial(format!("not a chain map in degree {k}")));
            }
        }
        Ok(f)
    }

    pub fn identity(c: &RationalComplex) -> Self {
        let maps = c.dims.iter().map(|(&k, &n)| (k, Mat::identity(n))).collect();
        ChainMap { source: c.clone(), target: c.clone(), maps }
    }

    pub fn zero(source: &RationalComplex, target: &RationalComplex) -> Self {
        ChainMap { source: source.clone(), target: target.clone(), maps: BTreeMap::new() }
    }

    pub fn at(&self, k: i32) -> Mat {
        self.maps.get(&k).cloned().unwrap_or_else(|| Mat::zeros(self.target.dim(k), self.source.dim(k)))
    }

    pub fn compose(&self, after: &ChainMap) -> Result<ChainMap> {
        if self.target != after.source {
            return Err(Error::DimensionMismatch("composable chain maps".into()));
        }
        let maps = self
            .source
            .degrees()
            .into_iter()
            .map(|k| Ok((k, after.at(k).mul(&self.at(k))?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(ChainMap { source: self.source.clone(), target: after.target.clone(), maps })
    }

    pub fn is_quasi_isomorphism(&self) -> bool {
        mapping_cone(self).is_acyclic()
    }

    fn degree_span(&self) -> Option<(i32, i32)> {
        let a = self.source.range();
        let b = self.target.range();
        match (a, b) {
            (None, None) => None,
            (Some(x), None) | (None, Some(x)) => Some(x),
            (Some(x), Some(y)) => Some((x.0.min(y.0), x.1.max(y.1))),
        }
    }
}

/// `fib(f)_k = A_k ⊕ B_{k+1}`, `d(a, b) = (d a, f a - d b)`.
pub fn mapping_fiber(f: &ChainMap) -> RationalComplex {
    let Some((lo, hi)) = f.degree_span() else { return RationalComplex::zero() };
    let (a, b) = (&f.source, &f.target);
    let mut dims = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for k in (lo - 1)..=hi {
        dims.insert(k, a.dim(k) + b.dim(k + 1));
    }
    for k in lo..=hi {
        let m = Mat::block(
            &[a.dim(k - 1), b.dim(k)],
            &[a.dim(k), b.dim(k + 1)],
            &[vec![Some(a.d(k)), None], vec![Some(f.at(k)), Some(b.d(k + 1).scale(&-Q::one()))]],
        )
        .expect("fiber blocks");
        diffs.insert(k, m);
    }
    RationalComplex::new(dims, diffs).expect("fiber of a chain map")
}

/// `cone(f)_k = B_k ⊕ A_{k-1}`, `d(b, a) = (d b + f a, -d a)`.
pub fn mapping_cone(f: &ChainMap) -> RationalComplex {
    let Some((lo, hi)) = f.degree_span() else { return RationalComplex::zero() };
    let (a, b) = (&f.source, &f.target);
    let mut dims = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for k in lo..=(hi + 1) {
        dims.insert(k, b.dim(k) + a.dim(k - 1));
    }
    for k in lo..=(hi + 1) {
        let m = Mat::block(
            &[b.dim(k - 1), a.dim(k - 2)],
            &[b.dim(k), a.dim(k - 1)],
            &[vec![Some(b.d(k)), Some(f.at(k - 1))], vec![None, Some(a.d(k - 1).scale(&-Q::one()))]],
        )
        .expect("cone blocks");
        diffs.insert(k, m);
    }
    RationalComplex::new(dims, diffs).expect("cone of a chain map")
}

/// The map `fib(f) → fib(g)` induced by a commuting square with `f : A → B`, `g : C → D`,
/// `left : A → C` and `right : B → D`.
pub fn fiber_map(f: &ChainMap, g: &ChainMap, left: &ChainMap, right: &ChainMap) -> Result<ChainMap> {
    let (src, tgt) = (mapping_fiber(f), mapping_fiber(g));
    let degrees: Vec<i32> = src.degrees();
    let mut maps = BTreeMap::new();
    for k in degrees {
        let m = Mat::block(
            &[g.source.dim(k), g.target.dim(k + 1)],
            &[f.source.dim(k), f.target.dim(k + 1)],
            &[vec![Some(left.at(k)), None], vec![None, Some(right.at(k + 1))]],
        )?;
        maps.insert(k, m);
    }
    ChainMap::new(src, tgt, maps)
}

/// Total fiber of the square
/// ```text
/// A --f--> B
/// |left    |right
/// C --g--> D
/// ```
pub fn total_fiber(f: &ChainMap, g: &ChainMap, left: &ChainMap, right: &ChainMap) -> Result<RationalComplex> {
    Ok(mapping_fiber(&fiber_map(f, g, left, right)?))
}
