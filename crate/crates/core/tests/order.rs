mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use sck_core::order::{downset_lattice, transitive_closure, FiniteLattice, FinitePoset, MonotoneMap, DEFAULT_DOWNSET_LIMIT};
use sck_core::Error;

fn downset_members(p: &FinitePoset) -> BTreeSet<Vec<usize>> {
    p.downsets(DEFAULT_DOWNSET_LIMIT).unwrap().iter().map(|d| d.members().to_vec()).collect()
}

#[test]
fn lattice_examples() {
    let point = FinitePoset::build::<&str>(&["a"], &[]).unwrap();
    let (l, _) = downset_lattice(&point, DEFAULT_DOWNSET_LIMIT).unwrap();
    assert_eq!(l.len(), 2);

    let anti = FinitePoset::build::<&str>(&["x", "y"], &[]).unwrap();
    let (l, ds) = downset_lattice(&anti, DEFAULT_DOWNSET_LIMIT).unwrap();
    let ids: BTreeSet<String> = ds.iter().map(|d| d.id(&anti)).collect();
    assert_eq!(ids, ["", "x", "y", "x,y"].iter().map(|s| s.to_string()).collect());
    assert!(l.is_distributive());

    let chain = FinitePoset::build(&["a", "b"], &[("a", "b")]).unwrap();
    let (l, ds) = downset_lattice(&chain, DEFAULT_DOWNSET_LIMIT).unwrap();
    let ids: Vec<String> = ds.iter().map(|d| d.id(&chain)).collect();
    assert_eq!(l.len(), 3);
    assert!(ids.contains(&"a".to_string()) && !ids.contains(&"b".to_string()));
}

#[test]
fn m3_is_not_distributive() {
    let m3 = FinitePoset::build(
        &["bot", "x", "y", "z", "top"],
        &[("bot", "x"), ("bot", "y"), ("bot", "z"), ("x", "top"), ("y", "top"), ("z", "top")],
    )
    .unwrap();
    let l = FiniteLattice::from_poset(m3).unwrap();
    assert!(l.tables_consistent());
    assert!(!l.is_distributive());
    let (x, y, z) = l.distributivity_counterexample().unwrap();
    assert_ne!(l.meet(x, l.join(y, z)), l.join(l.meet(x, y), l.meet(x, z)));
}

#[test]
fn monotone_examples() {
    let c3 = FinitePoset::chain(3);
    assert!(MonotoneMap::identity(&c3).is_monotone());
    let bottom = MonotoneMap::new(c3.clone(), c3.clone(), vec![0, 0, 0]).unwrap();
    assert!(bottom.is_monotone());
    let c2 = FinitePoset::chain(2);
    let swap = MonotoneMap::new(c2.clone(), c2, vec![1, 0]).unwrap();
    assert!(!swap.is_monotone());
}

#[test]
fn size_guard_is_loud() {
    let anti = FinitePoset::antichain(5);
    assert!(matches!(anti.downsets(31), Err(Error::SizeLimitExceeded { .. })));
    assert_eq!(anti.downsets(32).unwrap().len(), 32);
}

proptest! {
    #[test]
    fn closure_is_idempotent(bits in proptest::collection::vec(any::<bool>(), 36)) {
        let n = 6;
        let mut rel: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j || bits[i * n + j]).collect()).collect();
        transitive_closure(&mut rel);
        let once = rel.clone();
        transitive_closure(&mut rel);
        prop_assert_eq!(once, rel);
    }

    #[test]
    fn downsets_match_brute_force(le in common::arb_order(7)) {
        let p = common::to_poset(&le);
        prop_assert_eq!(downset_members(&p), common::down_sets(&p));
    }

    #[test]
    fn downset_lattice_is_distributive(le in common::arb_order(7)) {
        let p = common::to_poset(&le);
        let (l, ds) = downset_lattice(&p, DEFAULT_DOWNSET_LIMIT).unwrap();
        prop_assert!(l.is_distributive());
        prop_assert!(l.tables_consistent());
        // join is union and meet is intersection
        for a in 0..l.len() {
            for b in 0..l.len() {
                let union: BTreeSet<usize> = ds[a].members().iter().chain(ds[b].members()).copied().collect();
                let inter: BTreeSet<usize> = ds[a].members().iter().filter(|x| ds[b].contains(**x)).copied().collect();
                prop_assert_eq!(ds[l.join(a, b)].members().iter().copied().collect::<BTreeSet<_>>(), union);
                prop_assert_eq!(ds[l.meet(a, b)].members().iter().copied().collect::<BTreeSet<_>>(), inter);
            }
        }
        prop_assert!(ds[l.bottom()].members().is_empty());
        prop_assert_eq!(ds[l.top()].members().len(), p.len());
    }

    #[test]
    fn complement_reverses_downsets_of_the_opposite(le in common::arb_order(6)) {
        let p = common::to_poset(&le);
        let op = p.opposite();
        let mine = p.downsets(DEFAULT_DOWNSET_LIMIT).unwrap();
        let theirs = downset_members(&op);
        let images: BTreeSet<Vec<usize>> = mine.iter().map(|d| d.complement(&p).members().to_vec()).collect();
        prop_assert_eq!(&images, &theirs);
        for a in &mine {
            for b in &mine {
                prop_assert_eq!(a.is_subset(b), b.complement(&p).is_subset(&a.complement(&p)));
            }
        }
    }

    #[test]
    fn subset_ids_round_trip(le in common::arb_order(6), mask in 0u32..64) {
        let p = common::to_poset(&le);
        let set: Vec<usize> = (0..p.len()).filter(|i| mask >> i & 1 == 1).collect();
        let id = p.subset_id(&set);
        prop_assert_eq!(p.parse_subset_id(&id).unwrap(), set);
    }
}
