//! Test-side generators and oracles, written without the library's algorithms.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sck_core::order::FinitePoset;

pub type Rel = Vec<Vec<bool>>;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn code(le: &Rel, perm: &[usize]) -> u64 {
    let n = le.len();
    let mut c = 0u64;
    for i in 0..n {
        for j in 0..n {
            c = c << 1 | le[perm[i]][perm[j]] as u64;
        }
    }
    c
}

fn canonical(le: &Rel, perms: &[Vec<usize>]) -> u64 {
    perms.iter().map(|p| code(le, p)).min().unwrap_or(0)
}

/// Order relations on `n` points, one per isomorphism class. A poset on `n + 1` points is
/// a poset on `n` points plus a new maximal element above some down-closed set.
pub fn posets_up_to_iso(n: usize) -> Vec<Rel> {
    let mut level: Vec<Rel> = vec![vec![]];
    for m in 0..n {
        let perms = permutations(m + 1);
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for le in &level {
            for mask in 0u32..(1 << m) {
                let down = (0..m).all(|b| mask >> b & 1 == 0 || (0..m).all(|a| !le[a][b] || mask >> a & 1 == 1));
                if !down {
                    continue;
                }
                let mut ext = vec![vec![false; m + 1]; m + 1];
                for a in 0..m {
                    for b in 0..m {
                        ext[a][b] = le[a][b];
                    }
                    ext[a][m] = mask >> a & 1 == 1;
                }
                ext[m][m] = true;
                if seen.insert(canonical(&ext, &perms)) {
                    next.push(ext);
                }
            }
        }
        level = next;
    }
    level
}

pub fn to_poset(le: &Rel) -> FinitePoset {
    let labels = (0..le.len()).map(|i| i.to_string()).collect();
    FinitePoset::from_relation(labels, le.clone()).expect("valid order")
}

pub fn posets(n: usize) -> Vec<FinitePoset> {
    posets_up_to_iso(n).iter().map(to_poset).collect()
}

pub fn posets_upto(n: usize) -> Vec<FinitePoset> {
    (1..=n).flat_map(posets).collect()
}

/// A random order on `n` shuffled points: a random DAG closed under transitivity.
pub fn random_order(rng: &mut ChaCha8Rng, n: usize) -> Rel {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let mut le = vec![vec![false; n]; n];
    for i in 0..n {
        le[i][i] = true;
        for j in (i + 1)..n {
            if rng.gen_bool(0.4) {
                le[perm[i]][perm[j]] = true;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    le
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Up-closed subsets of `p` as sorted member lists, by brute force over all subsets.
pub fn up_sets(p: &FinitePoset) -> BTreeSet<Vec<usize>> {
    let n = p.len();
    (0u32..(1 << n))
        .filter(|&m| (0..n).all(|a| m >> a & 1 == 0 || (0..n).all(|b| !p.le(a, b) || m >> b & 1 == 1)))
        .map(|m| (0..n).filter(|&a| m >> a & 1 == 1).collect())
        .collect()
}

/// Down-closed subsets of `p`, by brute force.
pub fn down_sets(p: &FinitePoset) -> BTreeSet<Vec<usize>> {
    up_sets(&p.opposite())
}

/// All maps `0..n -> 0..m` that preserve the orders.
pub fn monotone_tables(s: &FinitePoset, t: &FinitePoset) -> Vec<Vec<usize>> {
    let (n, m) = (s.len(), t.len());
    let mut out = Vec::new();
    let total = m.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let table: Vec<usize> = (0..n)
            .map(|_| {
                let d = c % m;
                c /= m;
                d
            })
            .collect();
        if (0..n).all(|a| (0..n).all(|b| !s.le(a, b) || t.le(table[a], table[b]))) {
            out.push(table);
        }
    }
    out
}

/// A random order on up to `max` points: upper-triangular bits closed under transitivity,
/// then relabelled by a permutation so that index order carries no information.
pub fn arb_order(max: usize) -> impl proptest::strategy::Strategy<Value = Rel> {
    use proptest::prelude::*;
    (1..=max)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec(any::<bool>(), n * n), Just((0..n).collect::<Vec<_>>()).prop_shuffle()))
        .prop_map(|(n, bits, perm)| {
            let mut le = vec![vec![false; n]; n];
            for i in 0..n {
                le[perm[i]][perm[i]] = true;
                for j in (i + 1)..n {
                    le[perm[i]][perm[j]] = bits[i * n + j];
                }
            }
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        if le[i][k] && le[k][j] {
                            le[i][j] = true;
                        }
                    }
                }
            }
            le
        })
}

/// `?(x)` by walking the Stern–Brocot tree: each mediant step halves a dyadic interval.
pub fn minkowski_stern_brocot(x: &sck_core::Q) -> sck_core::Q {
    use sck_core::rational::{mediant, midpoint, q};
    let (mut lo, mut hi) = (q(0, 1), q(1, 1));
    let (mut dlo, mut dhi) = (q(0, 1), q(1, 1));
    if *x == lo || *x == hi {
        return x.clone();
    }
    loop {
        let m = mediant(&lo, &hi);
        let dm = midpoint(&dlo, &dhi);
        if *x == m {
            return dm;
        }
        if *x < m {
            hi = m;
            dhi = dm;
        } else {
            lo = m;
            dlo = dm;
        }
    }
}

/// `?(x) = 2 Σ (-1)^(k+1) 2^-(a_1+...+a_k)` for `x = [0; a_1, a_2, ...]`.
pub fn minkowski_cf(x: &sck_core::Q) -> sck_core::Q {
    use num_traits::{One, Pow, Zero};
    use sck_core::Q;
    if x.is_zero() || x.is_one() {
        return x.clone();
    }
    let (mut num, mut den) = (x.numer().clone(), x.denom().clone());
    let two = Q::from_integer(2.into());
    let (mut sum, mut exp, mut sign) = (Q::zero(), 0u32, 1);
    while !num.is_zero() {
        let a: u32 = (&den / &num).try_into().expect("small partial quotient");
        let r = &den % &num;
        den = num;
        num = r;
        exp += a;
        let term = Pow::pow(&two, exp).recip();
        if sign > 0 {
            sum += term;
        } else {
            sum -= term;
        }
        sign = -sign;
    }
    sum * two
}
