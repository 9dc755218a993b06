//! Acceptance suite: one line per criterion, exit status 1 if any criterion fails.

mod common;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_traits::One;
use rand::Rng;

use sck_core::frame::{bm_compactify, very_schwartz_subframe, Builtin, DintHom, Element, FiniteFrame, Frame};
use sck_core::idealoid::glued::{self, Arrow, GluedPoint};
use sck_core::idealoid::{minkowski, Idealoid, RelationKind};
use sck_core::order::{natural_posets, FinitePoset, MonotoneMap, DEFAULT_DOWNSET_LIMIT as LIMIT};
use sck_core::rational::{fmt_q, q};
use sck_core::sheaf::{random_sheaf, verdier_dual, verdier_roundtrip, JumpPresheaf, SetPresheaf, Side};
use sck_core::space::{is_perfect_map, PerfectMap, SpaceDescriptor};
use sck_core::Q;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// 1 -------------------------------------------------------------------------------------

/// Pairs of the order, with bitmask tables for absorption and interpolation.
struct PairSpace {
    pairs: Vec<(usize, usize)>,
    /// `wider[i]`: pairs `(a', b')` with `a' ≤ a` and `b ≤ b'`.
    wider: Vec<u32>,
    /// `splits[i]`: pairs of pair indices `(j, k)` meeting in a middle point.
    splits: Vec<Vec<(usize, usize)>>,
}

impl PairSpace {
    fn new(p: &FinitePoset) -> Self {
        let n = p.len();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| p.le(a, b)).collect();
        let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &ab)| (ab, i)).collect();
        let wider = pairs
            .iter()
            .map(|&(a, b)| {
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(_, &(a2, b2))| p.le(a2, a) && p.le(b, b2))
                    .fold(0u32, |m, (j, _)| m | 1 << j)
            })
            .collect();
        let splits = pairs
            .iter()
            .map(|&(a, b)| {
                (0..n)
                    .filter_map(|c| Some((*index.get(&(a, c))?, *index.get(&(c, b))?)))
                    .collect()
            })
            .collect();
        PairSpace { pairs, wider, splits }
    }

    fn bits(&self, m: u32) -> impl Iterator<Item = usize> + '_ {
        (0..self.pairs.len()).filter(move |&i| m >> i & 1 == 1)
    }

    fn is_idealoid(&self, m: u32) -> bool {
        self.bits(m).all(|i| self.wider[i] & !m == 0)
    }

    fn is_subdivisible(&self, m: u32) -> bool {
        self.bits(m).all(|i| self.splits[i].iter().any(|&(j, k)| m >> j & 1 == 1 && m >> k & 1 == 1))
    }
}

fn criterion_1() -> Check {
    let mut posets = 0;
    let mut checked = 0;
    for p in common::posets_upto(5) {
        posets += 1;
        let ps = PairSpace::new(&p);
        let all: Vec<u32> = (0u32..(1 << ps.pairs.len())).filter(|&m| ps.is_idealoid(m)).collect();
        let subdivisible: Vec<u32> = all.iter().copied().filter(|&m| ps.is_subdivisible(m)).collect();
        for &m in &all {
            let below: Vec<u32> = subdivisible.iter().copied().filter(|&j| j & !m == 0).collect();
            let largest = below.iter().copied().max_by_key(|j| j.count_ones()).unwrap_or(0);
            ensure(below.iter().all(|&j| j & !largest == 0), || format!("no largest subdivisible part of {m:b}"))?;
            let pairs: Vec<(usize, usize)> = ps.bits(m).map(|i| ps.pairs[i]).collect();
            let core = Idealoid::from_pairs(p.clone(), &pairs).map_err(|e| e.to_string())?.sd_core();
            let got: BTreeSet<(usize, usize)> = core.pairs().into_iter().collect();
            let want: BTreeSet<(usize, usize)> = ps.bits(largest).map(|i| ps.pairs[i]).collect();
            ensure(got == want, || format!("{:?} on {p:?}: sd_core {got:?}, brute force {want:?}", pairs))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} idealoids over {posets} posets"))
}

// 2 -------------------------------------------------------------------------------------

fn arrows(points: &[GluedPoint]) -> Vec<Arrow> {
    points
        .iter()
        .flat_map(|a| points.iter().filter_map(move |b| Arrow::new(a.clone(), b.clone()).ok()))
        .collect()
}

/// Points of the glued interval with denominators up to `den`.
fn fine_points(den: i64) -> Vec<GluedPoint> {
    let mut out = vec![GluedPoint::Zero, GluedPoint::One];
    for d in 2..=den {
        for k in 1..d {
            if num_integer::gcd(k, d) == 1 {
                out.push(GluedPoint::Left(q(k, d)));
                out.push(GluedPoint::Right(q(k, d)));
            }
        }
    }
    out
}

fn criterion_2() -> Check {
    let x = Arrow::parse("0->1/2'").map_err(|e| e.to_string())?;
    let y = Arrow::parse("1/2->1").map_err(|e| e.to_string())?;
    ensure(glued::in_arrow_idealoid(&x, &y), || "the counterexample pair is not in the arrow idealoid".into())?;
    ensure(!glued::in_sd_core(&x, &y), || "the counterexample pair is in the core".into())?;
    // no arrow strictly between them, even on a finer grid
    let fine = arrows(&fine_points(12));
    let between = fine.iter().find(|z| glued::in_arrow_idealoid(&x, z) && glued::in_arrow_idealoid(z, &y));
    ensure(between.is_none(), || format!("{} interpolates the counterexample", between.unwrap()))?;

    let sample = arrows(&glued::sample_points(3));
    let mut buffered = 0;
    for a in &sample {
        for b in &sample {
            if !glued::in_arrow_idealoid(a, b) || glued::buffer(a, b).is_none() {
                continue;
            }
            buffered += 1;
            ensure(glued::in_sd_core(a, b), || format!("buffered pair {a} -> {b} is outside the core"))?;
            for depth in 0..=4 {
                let chain = glued::buffer_chain(a, b, depth).map_err(|e| e.to_string())?;
                ensure(glued::validate_arrow_chain(&chain), || format!("buffer chain for {a} -> {b} fails at depth {depth}"))?;
                let (first, last) = (&chain.values[0], chain.values.last().unwrap());
                let starts_above = first.source == a.source && a.target.le(&first.target);
                ensure(starts_above && last == b, || format!("buffer chain for {a} -> {b} has the wrong ends"))?;
            }
        }
    }
    ensure(buffered > 0, || "no buffered pairs in the sample".into())?;
    Ok(format!("counterexample outside the core; {buffered} buffered pairs inside"))
}

// 3 -------------------------------------------------------------------------------------

fn criterion_3() -> Check {
    let mut rng = common::rng(3);
    let mut xs: BTreeSet<Q> = BTreeSet::new();
    while xs.len() < 200 {
        let d: i64 = rng.gen_range(1..=50);
        let n: i64 = rng.gen_range(0..=d);
        xs.insert(q(n, d));
    }
    let mut prev: Option<(Q, Q)> = None;
    for x in &xs {
        let y = minkowski::forward(x).map_err(|e| e.to_string())?;
        let want = common::minkowski_stern_brocot(x);
        ensure(y == want, || format!("?({}) = {}, oracle {}", fmt_q(x), fmt_q(&y), fmt_q(&want)))?;
        let back = minkowski::inverse(&y).map_err(|e| e.to_string())?;
        ensure(&back == x, || format!("inverse(?({})) = {}", fmt_q(x), fmt_q(&back)))?;
        if let Some((px, py)) = &prev {
            ensure(*py < y, || format!("? is not increasing between {} and {}", fmt_q(px), fmt_q(x)))?;
        }
        prev = Some((x.clone(), y));
    }
    let third = minkowski::forward(&q(1, 3)).map_err(|e| e.to_string())?;
    ensure(third == q(1, 4) && common::minkowski_cf(&q(1, 3)) == q(1, 4), || format!("?(1/3) = {}", fmt_q(&third)))?;
    Ok("200 rationals, ?(1/3) = 1/4".into())
}

// 4 -------------------------------------------------------------------------------------

/// `x ≪ y` from the definition, over directed subsets of at most two elements. A finite
/// directed set has a maximum, so larger ones add nothing.
fn finite_way_below_oracle(ff: &FiniteFrame) -> Vec<u64> {
    let l = ff.lattice();
    let n = l.len();
    let mut wb = vec![u64::MAX >> (64 - n); n];
    let mut families: Vec<Vec<usize>> = (0..n).map(|d| vec![d]).collect();
    for a in 0..n {
        for b in (a + 1)..n {
            if (0..n).any(|c| l.le(a, c) && l.le(b, c) && (c == a || c == b)) {
                families.push(vec![a, b]);
            }
        }
    }
    for d in &families {
        let join = l.join_all(d.iter().copied());
        let covered = (0..n).filter(|&x| d.iter().any(|&e| l.le(x, e))).fold(0u64, |m, x| m | 1 << x);
        for (y, col) in wb.iter_mut().enumerate() {
            if l.le(y, join) {
                *col &= covered;
            }
        }
    }
    wb
}

fn dint_le(x: &Element, y: &Element) -> bool {
    match (x, y) {
        (Element::Bot, _) | (_, Element::Top) => true,
        (Element::Up(a), Element::Up(b)) => b <= a,
        _ => false,
    }
}

/// `x ≪ y` in `dint` over the directed families `{up(r) : p < r ≤ p + 1/k}`, whose join
/// `up(p)` is not attained, plus the attained ones. Witnesses `r` are searched on a grid
/// fine enough for the sample.
fn dint_way_below_oracle(x: &Element, y: &Element, max_den: i64) -> bool {
    if !dint_le(x, y) {
        return false;
    }
    let grid = sck_core::rational::farey(max_den * max_den);
    for p in sck_core::rational::farey(max_den).into_iter().filter(|p| *p < Q::one()) {
        if !dint_le(y, &Element::Up(p.clone())) {
            continue;
        }
        for k in 1..=max_den {
            let hi = (p.clone() + q(1, k)).min(Q::one());
            let hit = grid.iter().filter(|r| **r > p && **r <= hi).any(|r| {
                let d = if r.is_one() { Element::Bot } else { Element::Up(r.clone()) };
                dint_le(x, &d)
            });
            if !hit {
                return false;
            }
        }
    }
    true
}

fn criterion_4() -> Check {
    let mut frames = 0;
    for p in common::posets_upto(6) {
        let f = Frame::finite(&p, LIMIT).map_err(|e| e.to_string())?;
        let ff = f.as_finite().unwrap();
        let oracle = finite_way_below_oracle(ff);
        for x in 0..ff.len() {
            for y in 0..ff.len() {
                let (ex, ey) = (Element::Index(x), Element::Index(y));
                let lib = f.way_below(&ex, &ey);
                ensure(lib == (oracle[y] >> x & 1 == 1), || format!("{p:?}: way_below({x}, {y}) disagrees with the oracle"))?;
                ensure(lib == f.le(&ex, &ey), || format!("{p:?}: way_below differs from ≤ at ({x}, {y})"))?;
            }
        }
        frames += 1;
    }
    let dint = Frame::Builtin(Builtin::Dint);
    let mut sample = vec![Element::Bot, Element::Top];
    sample.extend(sck_core::rational::farey(8).into_iter().filter(|r| !r.is_one()).map(Element::Up));
    let mut pairs = 0;
    for x in &sample {
        for y in &sample {
            let lib = dint.way_below(x, y);
            ensure(lib == dint_way_below_oracle(x, y, 8), || format!("dint: {} ≪ {} disagrees with the oracle", dint.show(x), dint.show(y)))?;
            pairs += 1;
        }
    }
    Ok(format!("{frames} finite frames, {pairs} dint pairs"))
}

// 5 -------------------------------------------------------------------------------------

fn check_compact_regular(g: &Frame, what: &str) -> Result<(), String> {
    ensure(g.is_regular(), || format!("{what}: output is not regular"))?;
    ensure(g.has_compact_top(), || format!("{what}: output top is not compact"))
}

fn compact(f: &Frame) -> Result<Frame, String> {
    Ok(bm_compactify(f, RelationKind::RatherBelow).map_err(|e| e.to_string())?.frame)
}

fn isomorphic(a: &Frame, b: &Frame) -> bool {
    match (a.as_finite(), b.as_finite()) {
        (Some(x), Some(y)) => x.lattice().isomorphism_to(y.lattice()).is_some(),
        _ => a == b,
    }
}

fn criterion_5() -> Check {
    let sierpinski = FinitePoset::build(&["a", "b"], &[("b", "a")]).map_err(|e| e.to_string())?;
    let s = SpaceDescriptor::Finite(sierpinski).frame(LIMIT).map_err(|e| e.to_string())?;
    for (name, f) in [("Sierpiński", s), ("dint", Frame::Builtin(Builtin::Dint))] {
        let g = compact(&f)?;
        let size = g.as_finite().map(FiniteFrame::len);
        ensure(size == Some(2), || format!("compactify({name}) has {size:?} elements"))?;
        check_compact_regular(&g, name)?;
        ensure(isomorphic(&compact(&g)?, &g), || format!("compactify({name}) is not idempotent"))?;
    }
    for n in 1..=4 {
        let f = Frame::finite(&FinitePoset::antichain(n), LIMIT).map_err(|e| e.to_string())?;
        let g = compact(&f)?;
        ensure(isomorphic(&g, &f), || format!("compactify(powerset of {n}) is not the identity"))?;
        check_compact_regular(&g, "powerset")?;
        ensure(isomorphic(&compact(&g)?, &g), || format!("compactify(powerset of {n}) is not idempotent"))?;
    }
    let mut others = 0;
    for p in common::posets_upto(4) {
        let f = Frame::finite(&p, LIMIT).map_err(|e| e.to_string())?;
        let g = compact(&f)?;
        check_compact_regular(&g, &format!("{p:?}"))?;
        ensure(isomorphic(&compact(&g)?, &g), || format!("{p:?}: compactify is not idempotent"))?;
        others += 1;
    }
    Ok(format!("Sierpiński and dint give 2 elements; powersets fixed; {others} further frames"))
}

// 6 -------------------------------------------------------------------------------------

fn criterion_6() -> Check {
    let mut whole = Vec::new();
    for b in [Builtin::Dint, Builtin::DintOp, Builtin::Cofinite, Builtin::DintIdeals] {
        let f = Frame::Builtin(b);
        let r = very_schwartz_subframe(&f, 8).map_err(|e| e.to_string())?;
        ensure(r.continuity.stably_continuous, || format!("{}: output is not stably continuous", b.name()))?;
        if f.is_stably_continuous().stably_continuous {
            ensure(r.whole_frame, || format!("{}: subframe is not the whole frame", b.name()))?;
            whole.push(b.name());
        }
    }
    let mut finite = 0;
    for p in common::posets_upto(4) {
        let f = Frame::finite(&p, LIMIT).map_err(|e| e.to_string())?;
        let r = very_schwartz_subframe(&f, 0).map_err(|e| e.to_string())?;
        ensure(r.frame.is_stably_continuous().stably_continuous, || format!("{p:?}: output is not stably continuous"))?;
        ensure(r.whole_frame, || format!("{p:?}: subframe is not the whole frame"))?;
        finite += 1;
    }
    Ok(format!("whole frame on {}; {finite} finite frames", whole.join(", ")))
}

// 7 -------------------------------------------------------------------------------------

fn criterion_7() -> Check {
    let mut rng = common::rng(7);
    for trial in 0..50 {
        let n = rng.gen_range(1..=6);
        let p = common::to_poset(&common::random_order(&mut rng, n));
        let x = SpaceDescriptor::Finite(p.clone());
        let nb = x.to_nachbin().map_err(|e| e.to_string())?;
        ensure(SpaceDescriptor::from_nachbin(&nb) == x, || format!("trial {trial}: Nachbin round trip changes {p:?}"))?;
        let d = x.de_groot_dual().map_err(|e| e.to_string())?;
        ensure(d.de_groot_dual().map_err(|e| e.to_string())? == x, || format!("trial {trial}: dual is not an involution"))?;
        let SpaceDescriptor::Finite(dp) = &d else {
            return Err("finite dual expected".into());
        };
        ensure((0..n).all(|a| (0..n).all(|b| dp.le(a, b) == p.le(b, a))), || format!("trial {trial}: dual order is not opposite"))?;
        let ksat: BTreeSet<Vec<usize>> = x.compact_saturated_sets(LIMIT).map_err(|e| e.to_string())?.into_iter().collect();
        let complements: BTreeSet<Vec<usize>> =
            common::up_sets(dp).into_iter().map(|u| (0..n).filter(|a| !u.contains(a)).collect()).collect();
        ensure(ksat == complements, || format!("trial {trial}: compact saturated sets are not complements of dual opens"))?;
    }
    Ok("50 random posets".into())
}

// 8 -------------------------------------------------------------------------------------

/// All functions `0..n -> 0..m`.
fn functions(n: usize, m: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    if m == 0 {
        return vec![];
    }
    (0..m.pow(n as u32))
        .map(|mut c| {
            (0..n)
                .map(|_| {
                    let d = c % m;
                    c /= m;
                    d
                })
                .collect()
        })
        .collect()
}

fn stalk_functors(p: &FinitePoset, sizes: &[usize]) -> Vec<HashMap<(usize, usize), Vec<usize>>> {
    let mut out = vec![HashMap::new()];
    for (a, b) in p.covers() {
        let fs = functions(sizes[a], sizes[b]);
        out = out
            .into_iter()
            .flat_map(|m| {
                fs.iter().map(move |f| {
                    let mut m2 = m.clone();
                    m2.insert((a, b), f.clone());
                    m2
                })
            })
            .collect();
    }
    out
}

fn jump_third() -> JumpPresheaf {
    let values = vec![vec!["*".to_string()], vec!["s".to_string(), "t".to_string()]];
    let map: BTreeMap<String, String> = [("*".to_string(), "s".to_string())].into_iter().collect();
    JumpPresheaf::new(vec![q(1, 3)], vec![Side::Left], values, &[map], None).expect("jump presheaf")
}

fn criterion_8() -> Check {
    let mut sheaves = 0;
    for p in common::posets_upto(3) {
        let n = p.len();
        for code in 0..4usize.pow(n as u32) {
            let sizes: Vec<usize> = (0..n).map(|i| code / 4usize.pow(i as u32) % 4).collect();
            let stalks: Vec<Vec<String>> = sizes.iter().map(|&k| (0..k).map(|i| format!("v{i}")).collect()).collect();
            for maps in stalk_functors(&p, &sizes) {
                let f = match SetPresheaf::from_stalks(&p, &stalks, &maps, LIMIT) {
                    Ok(f) => f,
                    Err(sck_core::Error::NotFunctorial(_)) => continue,
                    Err(e) => return Err(e.to_string()),
                };
                ensure(f.is_excisive(), || format!("{p:?} {sizes:?}: stalk presheaf is not excisive"))?;
                for u in 0..f.opens().len() {
                    let r = f.sheafify_at(u).map_err(|e| e.to_string())?;
                    ensure(r.bijective && r.value.len() == f.value(u).len(), || {
                        format!("{p:?} {sizes:?}: sheafification changes {{{}}}", r.open)
                    })?;
                }
                sheaves += 1;
            }
        }
    }
    let j = jump_third();
    let mut opens = vec![Element::Top];
    opens.extend(sck_core::rational::farey(12).into_iter().filter(|r| !r.is_one()).map(Element::Up));
    for e in &opens {
        let r = j.sheafify_at(e).map_err(|e| e.to_string())?;
        let at_threshold = *e == Element::Up(q(1, 3));
        ensure(r.bijective != at_threshold, || format!("jump presheaf: comparison at {} has bijective = {}", r.at, r.bijective))?;
    }
    Ok(format!("{sheaves} sheaves fixed; jump presheaf fails only at up:1/3 of {} opens", opens.len()))
}

// 9 -------------------------------------------------------------------------------------

fn criterion_9() -> Check {
    let spaces: Vec<FinitePoset> = (1..=4).flat_map(natural_posets).collect();
    for seed in 0..50u64 {
        let space = &spaces[(seed as usize * 7919) % spaces.len()];
        let f = random_sheaf(space, seed, 8, LIMIT).map_err(|e| e.to_string())?;
        let dim = f.value(f.opens().whole()).total_dim();
        ensure(dim <= 8, || format!("seed {seed}: total dimension {dim}"))?;
        ensure(f.is_stable_excisive(), || format!("seed {seed}: input is not stable excisive"))?;
        let d = verdier_dual(&f, LIMIT).map_err(|e| e.to_string())?;
        ensure(d.is_stable_excisive(), || format!("seed {seed}: dual is not stable excisive"))?;
        for row in verdier_roundtrip(&f, LIMIT).map_err(|e| e.to_string())? {
            ensure(row.sheaf == row.double_dual && row.quasi_isomorphic, || {
                format!("seed {seed}: double dual differs on {{{}}}", row.open)
            })?;
        }
    }
    Ok("50 seeded sheaves".into())
}

// 10 ------------------------------------------------------------------------------------

fn criterion_10() -> Check {
    let posets = common::posets_upto(4);
    let mut maps = 0;
    for s in &posets {
        for t in &posets {
            for table in common::monotone_tables(s, t) {
                // oracle: preimages of upper sets are upper, and f⁻¹ preserves ≤, which is ≪ here
                let pre_ok = common::up_sets(t).iter().all(|k| {
                    let pre: Vec<usize> = (0..s.len()).filter(|&x| k.contains(&table[x])).collect();
                    common::up_sets(s).contains(&pre)
                });
                let m = MonotoneMap::new(s.clone(), t.clone(), table.clone()).map_err(|e| e.to_string())?;
                let r = is_perfect_map(&PerfectMap::Finite(m), LIMIT, 0).map_err(|e| e.to_string())?;
                ensure(r.agree, || format!("{table:?}: criteria disagree"))?;
                ensure(r.preimage_criterion == pre_ok, || format!("{table:?}: preimage test disagrees with the oracle"))?;
                maps += 1;
            }
        }
    }
    let mut homs = Vec::new();
    for h in DintHom::registered() {
        let r = is_perfect_map(&PerfectMap::Dint(h.clone()), LIMIT, 8).map_err(|e| e.to_string())?;
        ensure(r.agree, || format!("{h}: criteria disagree"))?;
        // the point maps behind id and powers are continuous bijections; a step map sends
        // (c,1] to 1, so the preimage of [r,1] for r > 0 is the non-compact (c,1]
        let perfect = !matches!(h, DintHom::Step(_));
        ensure(r.preimage_criterion == perfect, || format!("{h}: expected perfect = {perfect}"))?;
        homs.push(format!("{h}={}", r.preimage_criterion));
    }
    Ok(format!("{maps} finite maps; dint: {}", homs.join(" ")))
}

// ---------------------------------------------------------------------------------------

fn main() {
    let criteria: [(&str, fn() -> Check, Option<u64>); 10] = [
        ("sd_core fixpoint correctness", criterion_1, None),
        ("glued double interval counterexample", criterion_2, Some(10)),
        ("Minkowski bijection", criterion_3, Some(10)),
        ("finite degeneracy and dint way-below", criterion_4, Some(10)),
        ("Banaschewski-Mulvey compactification", criterion_5, Some(10)),
        ("very Schwartz subframe", criterion_6, Some(10)),
        ("Gierz-Lawson round trip and de Groot dual", criterion_7, Some(10)),
        ("sheafification formula", criterion_8, Some(10)),
        ("Verdier duality", criterion_9, Some(60)),
        ("perfectness criteria agreement", criterion_10, Some(10)),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        let elapsed = start.elapsed();
        let result = match (result, budget) {
            (Ok(_), Some(b)) if elapsed > Duration::from_secs(*b) => Err(format!("took {elapsed:.1?}, budget {b}s")),
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("[PASS] {:>2} {name}: {detail} ({elapsed:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {:>2} {name}: {why} ({elapsed:.2?})", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
