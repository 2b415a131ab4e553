//! The acceptance suite: ten oracle-backed criteria run by the `selftest`
//! subcommand and by the integration tests. Each criterion is exhaustive or
//! seeded-random, so reruns are deterministic.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::blocks::{
    closure, enumerate_b, make_family, part, refines, subcollections, ClosureKind,
    DisjointCollection, ExplicitFamily, PartKind,
};
use crate::cbindex::{build_schreier_family, cb_index_m, DerivativeConfig};
use crate::oracle;
use crate::ordinal::{parse_ordinal, Ordinal};
use crate::partition::{
    hindman_search, verify_fu_mono, BlockColoring, MonoResult, ParityKey, SearchOutcome,
};
use crate::schreier::{decompose_a, enumerate_a, member_a, peel_a, FiniteSet, PeelResult};
use crate::sumsets::transport_check;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub fn corpus() -> Vec<Ordinal> {
    ["1", "2", "3", "w", "w+1", "w*2", "w^2", "w^2+w*2+1", "w^w"]
        .iter()
        .map(|s| parse_ordinal(s).unwrap())
        .collect()
}

fn report(id: usize, name: &'static str, result: Result<(), String>) -> CriterionReport {
    match result {
        Ok(()) => CriterionReport {
            id,
            name,
            passed: true,
            detail: "ok".into(),
        },
        Err(detail) => CriterionReport {
            id,
            name,
            passed: false,
            detail,
        },
    }
}

pub fn run_all() -> Vec<CriterionReport> {
    vec![
        report(1, "thinness", c1_thinness()),
        report(2, "canonical representation", c2_canonical()),
        report(3, "closed forms", c3_closed_forms()),
        report(4, "phi properties", c4_phi()),
        report(5, "transport inclusion", c5_transport()),
        report(6, "cb calibration", c6_calibration()),
        report(7, "cb monotonicity", c7_monotonicity()),
        report(8, "partition search", c8_search()),
        report(9, "finite tree equivalence", c9_tree_equivalence()),
        report(10, "closure algebra", c10_closure_algebra()),
    ]
}

fn singles(lo: u32, hi: u32) -> DisjointCollection {
    DisjointCollection::new((lo..=hi).map(FiniteSet::singleton).collect()).unwrap()
}

fn test_grounds() -> Vec<DisjointCollection> {
    vec![
        singles(1, 5),
        singles(2, 5),
        DisjointCollection::new(vec![
            FiniteSet::new(vec![1, 2]).unwrap(),
            FiniteSet::new(vec![3]).unwrap(),
            FiniteSet::new(vec![5, 6]).unwrap(),
            FiniteSet::new(vec![7]).unwrap(),
            FiniteSet::new(vec![9]).unwrap(),
        ])
        .unwrap(),
    ]
}

fn subsets(bound: u32) -> impl Iterator<Item = FiniteSet> {
    (0u32..(1 << bound)).map(move |mask| {
        FiniteSet::new((1..=bound).filter(|&e| mask >> (e - 1) & 1 == 1).collect()).unwrap()
    })
}

fn c1_thinness() -> Result<(), String> {
    for xi in corpus() {
        let members = enumerate_a(&xi, 12, 1_000_000).0;
        for s in &members {
            for t in &members {
                if s != t && s.is_initial_segment_of(t) {
                    return Err(format!("A_{xi}: {s:?} is a prefix of {t:?}"));
                }
            }
        }
        for g in test_grounds() {
            let members = enumerate_b(&xi, &g, true).map_err(|e| e.to_string())?;
            for s in &members {
                for t in &members {
                    if s != t && s.is_initial_segment_of(t) {
                        return Err(format!("B^{xi}: {s:?} is a prefix of {t:?}"));
                    }
                }
            }
        }
    }
    Ok(())
}

fn c2_canonical() -> Result<(), String> {
    let mut rng = StdRng::seed_from_u64(2);
    for xi in corpus() {
        for _ in 0..1000 {
            let s = FiniteSet::new((1..=16).filter(|_| rng.gen_bool(0.45)).collect()).unwrap();
            let d = decompose_a(&s, &xi);
            let mut rebuilt = Vec::new();
            for p in &d.pieces {
                if !member_a(p, &xi) {
                    return Err(format!("piece {p:?} not in A_{xi}"));
                }
                rebuilt.extend_from_slice(p.elements());
            }
            rebuilt.extend_from_slice(d.tail.elements());
            if rebuilt != s.elements() {
                return Err(format!("decomposition of {s:?} does not restore it"));
            }
            if peel_a(&d.tail, &xi) != PeelResult::Partial {
                return Err(format!("tail {:?} not partial at xi={xi}", d.tail));
            }
        }
        // random collections through the minima projection
        for _ in 0..1000 {
            let mut blocks = Vec::new();
            let mut next = 1u32;
            while next <= 14 && blocks.len() < 6 {
                let len = rng.gen_range(1..=2);
                let b: Vec<u32> = (next..next + len).collect();
                next += len + rng.gen_range(0..=1);
                blocks.push(FiniteSet::new(b).unwrap());
            }
            let c = DisjointCollection::new(blocks).unwrap();
            let (pieces, tail) = crate::blocks::decompose_b(&c, &xi);
            let mut rebuilt = Vec::new();
            for p in &pieces {
                if !crate::blocks::member_b(p, &xi) {
                    return Err(format!("piece {p:?} not in B^{xi}"));
                }
                rebuilt.extend_from_slice(p.blocks());
            }
            rebuilt.extend_from_slice(tail.blocks());
            if rebuilt != c.blocks() {
                return Err(format!("B-decomposition of {c:?} does not restore it"));
            }
        }
        for s in subsets(8) {
            let n = oracle::count_splittings(s.elements(), &xi);
            if n != 1 {
                return Err(format!("{n} splittings of {s:?} at xi={xi}"));
            }
        }
    }
    Ok(())
}

fn c3_closed_forms() -> Result<(), String> {
    let omega = parse_ordinal("w").unwrap();
    for s in subsets(12) {
        if member_a(&s, &omega) != oracle::a_omega_closed(&s) {
            return Err(format!("A_w closed form fails at {s:?}"));
        }
    }
    for g in test_grounds() {
        let all = subcollections(&g).map_err(|e| e.to_string())?;
        for k in 1..=3usize {
            let xi = Ordinal::nat(k as u64);
            let got = enumerate_b(&xi, &g, true).map_err(|e| e.to_string())?;
            let want: Vec<_> = all
                .iter()
                .filter(|c| oracle::b_k_closed(c, k))
                .cloned()
                .collect();
            if got != want {
                return Err(format!("B^{k} closed form fails over {g:?}"));
            }
        }
        let got = enumerate_b(&omega, &g, true).map_err(|e| e.to_string())?;
        let want: Vec<_> = all
            .iter()
            .filter(|c| oracle::b_omega_closed(c))
            .cloned()
            .collect();
        if got != want {
            return Err(format!("B^w closed form fails over {g:?}"));
        }
    }
    Ok(())
}

fn c4_phi() -> Result<(), String> {
    use crate::sumsets::{phi, phi_inv};
    // bijectivity: phi is the bitmask, both directions
    for mask in 1u64..(1 << 16) {
        let s = phi_inv(mask).map_err(|e| e.to_string())?;
        if phi(&s).map_err(|e| e.to_string())? != mask {
            return Err(format!("phi roundtrip fails at {mask}"));
        }
    }
    // order: s1 entirely below s2 implies phi(s1) < phi(s2)
    for b in 1u32..16 {
        for m1 in 1u64..(1 << b) {
            let hi = 16 - b;
            for m2 in 1u64..(1 << hi) {
                let (v1, v2) = (m1, m2 << b);
                if !(v1 < v2) {
                    return Err(format!("phi order fails: {v1} vs {v2}"));
                }
            }
        }
    }
    // additivity over all disjoint pairs, as masks
    for m in 1u64..(1 << 16) {
        let mut s = (m - 1) & m;
        while s > 0 {
            if s + (m ^ s) != m {
                return Err(format!("phi additivity fails at {s}+{}", m ^ s));
            }
            s = (s - 1) & m;
        }
    }
    Ok(())
}

fn c5_transport() -> Result<(), String> {
    let xis: Vec<Ordinal> = ["1", "2", "w"].iter().map(|s| parse_ordinal(s).unwrap()).collect();
    for d in (1..=4).flat_map(|m| oracle::all_collections(m, 8)) {
        for xi in &xis {
            let r = transport_check(&d, xi).map_err(|e| e.to_string())?;
            if !r.holds {
                return Err(format!(
                    "transport fails for D={d:?}, xi={xi}: {:?}",
                    r.counterexample
                ));
            }
        }
    }
    Ok(())
}

fn c6_calibration() -> Result<(), String> {
    for k in 1..=3usize {
        let xi = Ordinal::nat(k as u64);
        for n in 1..=10u32 {
            let d = singles(1, n);
            let f = build_schreier_family(&xi, &d).map_err(|e| e.to_string())?;
            for m in (k + 1)..=(n as usize).saturating_sub(k) {
                let idx = cb_index_m(&f, &DerivativeConfig::single_blocks(m))
                    .map_err(|e| e.to_string())?;
                if idx.index != Some(k + 1) {
                    return Err(format!(
                        "index {:?} (stalled={}) for k={k}, n={n}, m={m}",
                        idx.index, idx.stalled
                    ));
                }
            }
        }
    }
    Ok(())
}

fn index_or_inf(f: &ExplicitFamily, cfg: &DerivativeConfig) -> Result<usize, String> {
    let idx = cb_index_m(f, cfg).map_err(|e| e.to_string())?;
    Ok(idx.index.unwrap_or(usize::MAX))
}

fn c7_monotonicity() -> Result<(), String> {
    let mut rng = StdRng::seed_from_u64(7);
    let ground = singles(1, 5);
    let all = subcollections(&ground).unwrap();
    let cfg = DerivativeConfig::single_blocks(2);
    for _ in 0..100 {
        let picked: Vec<_> = all.iter().filter(|_| rng.gen_bool(0.4)).cloned().collect();
        let f2 = closure(
            &make_family(ground.clone(), picked).unwrap(),
            ClosureKind::StarDown,
        )
        .map_err(|e| e.to_string())?;
        let sub: Vec<_> = f2.members().filter(|_| rng.gen_bool(0.5)).cloned().collect();
        let f1 = closure(
            &make_family(ground.clone(), sub).unwrap(),
            ClosureKind::StarDown,
        )
        .map_err(|e| e.to_string())?;
        if !f1.is_subfamily_of(&f2) {
            return Err("nested pair construction broken".into());
        }
        let (i1, i2) = (index_or_inf(&f1, &cfg)?, index_or_inf(&f2, &cfg)?);
        if i1 > i2 {
            return Err(format!("inclusion monotonicity fails: {i1} > {i2}"));
        }
    }
    // ground refinement on the calibration families
    for k in 1..=2u32 {
        let xi = Ordinal::nat(k as u64);
        for j in 3..=5u32 {
            let d = singles(1, 2 * j);
            let d1 = DisjointCollection::new(
                (0..j)
                    .map(|i| FiniteSet::new(vec![2 * i + 1, 2 * i + 2]).unwrap())
                    .collect(),
            )
            .unwrap();
            if !refines(&d1, &d) {
                return Err("refinement pair construction broken".into());
            }
            let f = build_schreier_family(&xi, &d).map_err(|e| e.to_string())?;
            let f1 = build_schreier_family(&xi, &d1).map_err(|e| e.to_string())?;
            for m in (k as usize + 1)..=(j - k) as usize {
                let cfg = DerivativeConfig::single_blocks(m);
                let coarse = index_or_inf(&f1, &cfg)?;
                let fine = index_or_inf(&f, &cfg)?;
                if coarse < fine {
                    return Err(format!(
                        "refinement monotonicity fails: k={k}, j={j}, m={m}: {coarse} < {fine}"
                    ));
                }
            }
        }
    }
    Ok(())
}

fn c8_search() -> Result<(), String> {
    let catalog: Vec<BlockColoring> = vec![
        BlockColoring::Const(0),
        BlockColoring::Const(1),
        BlockColoring::ParityOf(ParityKey::Min),
        BlockColoring::ParityOf(ParityKey::Max),
        BlockColoring::ParityOf(ParityKey::Size),
        BlockColoring::ParityOf(ParityKey::Sum),
        BlockColoring::Xor(
            Box::new(BlockColoring::ParityOf(ParityKey::Min)),
            Box::new(BlockColoring::ParityOf(ParityKey::Size)),
        ),
        BlockColoring::Xor(
            Box::new(BlockColoring::ParityOf(ParityKey::Max)),
            Box::new(BlockColoring::ParityOf(ParityKey::Sum)),
        ),
    ];
    for (ci, col) in catalog.iter().enumerate() {
        for m in 1..=2usize {
            for n in m as u32..=6 {
                let got = hindman_search(col, m, n).map_err(|e| e.to_string())?;
                let want = oracle::hindman_brute(col, m, n);
                match (&got.outcome, want) {
                    (SearchOutcome::Witness { collection, .. }, Some(w)) => {
                        if *collection != w {
                            return Err(format!(
                                "coloring {ci}, m={m}, N={n}: search found {collection:?}, oracle {w:?}"
                            ));
                        }
                        match verify_fu_mono(collection, col) {
                            Ok(MonoResult::Monochromatic { .. }) => {}
                            other => {
                                return Err(format!("witness fails verification: {other:?}"))
                            }
                        }
                    }
                    (SearchOutcome::Exhausted { .. }, None) => {}
                    (got, want) => {
                        return Err(format!(
                            "coloring {ci}, m={m}, N={n}: search {got:?} vs oracle {want:?}"
                        ))
                    }
                }
            }
        }
    }
    // the worked examples, exactly
    let r = hindman_search(&BlockColoring::ParityOf(ParityKey::Min), 2, 4)
        .map_err(|e| e.to_string())?;
    let want = DisjointCollection::new(vec![FiniteSet::singleton(1), FiniteSet::singleton(3)])
        .unwrap();
    match &r.outcome {
        SearchOutcome::Witness { collection, .. } if *collection == want => {}
        other => return Err(format!("parity_of(min) example: {other:?}")),
    }
    let r = hindman_search(&BlockColoring::ParityOf(ParityKey::Size), 2, 4)
        .map_err(|e| e.to_string())?;
    let want = DisjointCollection::new(vec![
        FiniteSet::new(vec![1, 2]).unwrap(),
        FiniteSet::new(vec![3, 4]).unwrap(),
    ])
    .unwrap();
    match &r.outcome {
        SearchOutcome::Witness { collection, .. } if *collection == want => {}
        other => return Err(format!("parity_of(size) example: {other:?}")),
    }
    Ok(())
}

fn c9_tree_equivalence() -> Result<(), String> {
    let mut rng = StdRng::seed_from_u64(9);
    let grounds = [
        singles(1, 4),
        singles(3, 6),
        DisjointCollection::new(vec![
            FiniteSet::new(vec![1]).unwrap(),
            FiniteSet::new(vec![2, 3]).unwrap(),
            FiniteSet::new(vec![4]).unwrap(),
            FiniteSet::new(vec![6, 7]).unwrap(),
        ])
        .unwrap(),
    ];
    let xis: Vec<Ordinal> = ["1", "2", "w"].iter().map(|s| parse_ordinal(s).unwrap()).collect();
    for round in 0..200 {
        let g = &grounds[round % grounds.len()];
        let all = subcollections(g).unwrap();
        let picked: Vec<_> = all.iter().filter(|_| rng.gen_bool(0.35)).cloned().collect();
        let f = part(
            &make_family(g.clone(), picked).unwrap(),
            PartKind::Tree,
        )
        .map_err(|e| e.to_string())?;
        for xi in &xis {
            let no_complete_member = enumerate_b(xi, g, true)
                .map_err(|e| e.to_string())?
                .iter()
                .all(|c| !f.contains(c));
            let all_proper = f.members().all(|s| {
                crate::blocks::is_proper_initial_segment_b(s, xi)
                    && !crate::blocks::member_b(s, xi)
            });
            if no_complete_member != all_proper {
                return Err(format!(
                    "tree equivalence fails at xi={xi}, round {round}"
                ));
            }
        }
    }
    Ok(())
}

fn c10_closure_algebra() -> Result<(), String> {
    let mut rng = StdRng::seed_from_u64(10);
    let grounds = [singles(1, 4), singles(2, 5)];
    for round in 0..200 {
        let g = &grounds[round % grounds.len()];
        let all = subcollections(g).unwrap();
        let mut picked: Vec<_> = all.iter().filter(|_| rng.gen_bool(0.4)).cloned().collect();
        picked.push(DisjointCollection::empty());
        let f = make_family(g.clone(), picked).unwrap();

        let down = closure(&f, ClosureKind::StarDown).map_err(|e| e.to_string())?;
        if closure(&down, ClosureKind::StarDown).map_err(|e| e.to_string())? != down {
            return Err("star_down not idempotent".into());
        }
        let up = closure(&f, ClosureKind::StarUp).map_err(|e| e.to_string())?;
        if closure(&up, ClosureKind::StarUp).map_err(|e| e.to_string())? != up {
            return Err("star_up not idempotent".into());
        }

        let fh = part(&f, PartKind::Hereditary).map_err(|e| e.to_string())?;
        if part(&fh, PartKind::Hereditary).map_err(|e| e.to_string())? != fh {
            return Err("F_h not hereditary".into());
        }
        let ft = part(&f, PartKind::Tree).map_err(|e| e.to_string())?;
        if part(&ft, PartKind::Tree).map_err(|e| e.to_string())? != ft {
            return Err("F_t not a tree".into());
        }

        // maximality: independently built hereditary / tree subfamilies of F
        // land inside the parts
        let seed: Vec<_> = f.members().filter(|_| rng.gen_bool(0.5)).cloned().collect();
        let h = part(
            &make_family(g.clone(), seed.clone()).unwrap(),
            PartKind::Hereditary,
        )
        .map_err(|e| e.to_string())?;
        if h.members().all(|s| f.contains(s)) && !h.is_subfamily_of(&fh) {
            return Err("F_h misses a hereditary subfamily".into());
        }
        let t = part(&make_family(g.clone(), seed).unwrap(), PartKind::Tree)
            .map_err(|e| e.to_string())?;
        if t.members().all(|s| f.contains(s)) && !t.is_subfamily_of(&ft) {
            return Err("F_t misses a tree subfamily".into());
        }
    }
    Ok(())
}
