//! Finite-surrogate strong block Cantor-Bendixson derivative and index on
//! explicit hereditary families.
//!
//! "Contains an infinite disjoint collection of witnesses" has no finite
//! analogue; here a member dies when its witness set contains m pairwise
//! successive blocks. The calibration suite (index k+1 for the hereditary
//! closure of B^k) justifies the surrogate inside the window k < m <= n - k.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::blocks::{
    closure, enumerate_b, make_family, part, subcollections, ClosureKind, DisjointCollection,
    ExplicitFamily, PartKind,
};
use crate::error::{Error, Result};
use crate::ordinal::Ordinal;
use crate::schreier::FiniteSet;

/// Which blocks may serve as extension witnesses.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessUniverse {
    /// Ground blocks only (default; immune to support-exhaustion artifacts).
    SingleBlocks,
    /// All of FU(ground).
    FullFu,
    /// Unions of at most this many ground blocks.
    FuArityCapped(usize),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DerivativeConfig {
    /// Witness threshold: a member dies when m successive witnesses exist.
    pub m: usize,
    #[serde(default = "default_universe")]
    pub universe: WitnessUniverse,
}

fn default_universe() -> WitnessUniverse {
    WitnessUniverse::SingleBlocks
}

impl DerivativeConfig {
    pub fn single_blocks(m: usize) -> Self {
        assert!(m >= 1);
        DerivativeConfig {
            m,
            universe: WitnessUniverse::SingleBlocks,
        }
    }
}

/// Outcome of iterating the derivative.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CbIndex {
    /// Steps until the family emptied; `None` when iteration stalled at a
    /// nonempty fixed point (treated as infinite for comparisons).
    pub index: Option<usize>,
    /// Family sizes, starting with the input and one entry per step.
    pub trace: Vec<usize>,
    pub stalled: bool,
}

fn witness_blocks(ground: &DisjointCollection, universe: WitnessUniverse) -> Result<Vec<FiniteSet>> {
    match universe {
        WitnessUniverse::SingleBlocks => Ok(ground.blocks().to_vec()),
        WitnessUniverse::FullFu => crate::blocks::fu_enumerate(ground),
        WitnessUniverse::FuArityCapped(u) => {
            assert!(u >= 1);
            let mut out: Vec<FiniteSet> = Vec::new();
            let all = crate::blocks::fu_enumerate(ground)?;
            for t in all {
                let arity = ground.blocks().iter().filter(|b| b.is_subset(&t)).count();
                if arity <= u {
                    out.push(t);
                }
            }
            Ok(out)
        }
    }
}

/// Insert block `t` into `s` if `t` is successive with every block of `s`;
/// `None` when it overlaps or interleaves. `t` equal to an existing block
/// returns `s` unchanged.
fn insert_block(s: &DisjointCollection, t: &FiniteSet) -> Option<DisjointCollection> {
    if s.blocks().contains(t) {
        return Some(s.clone());
    }
    let mut blocks = s.blocks().to_vec();
    blocks.push(t.clone());
    blocks.sort();
    DisjointCollection::new(blocks).ok()
}

/// Longest chain of pairwise successive blocks: interval-scheduling greedy
/// (sort by max element, sweep).
fn max_successive_chain(witnesses: &[FiniteSet]) -> usize {
    let mut ws: Vec<&FiniteSet> = witnesses.iter().collect();
    ws.sort_by_key(|t| t.max_elem());
    let mut count = 0;
    let mut last_max = 0u32;
    for t in ws {
        if t.min_elem().unwrap_or(0) > last_max {
            count += 1;
            last_max = t.max_elem().unwrap();
        }
    }
    count
}

fn is_hereditary(f: &ExplicitFamily) -> Result<bool> {
    Ok(part(f, PartKind::Hereditary)? == *f)
}

fn survives(f: &ExplicitFamily, s: &DisjointCollection, witnesses: &[FiniteSet], m: usize) -> bool {
    let w: Vec<FiniteSet> = witnesses
        .iter()
        .filter(|t| match insert_block(s, t) {
            Some(joined) => !f.contains(&joined),
            None => true,
        })
        .cloned()
        .collect();
    max_successive_chain(&w) < m
}

/// One derivative step: drops every member with m pairwise successive
/// witnesses. Requires a hereditary input.
///
/// The output need not stay hereditary: a merged-block refinement (say
/// ({1,10}) under ({1},{10})) acquires interleaving witnesses its parent
/// lacks, so the parent can outlive it. Iteration therefore checks heredity
/// only at the start.
pub fn derivative_m(f: &ExplicitFamily, cfg: &DerivativeConfig) -> Result<ExplicitFamily> {
    if !is_hereditary(f)? {
        return Err(Error::NotHereditary);
    }
    derivative_unchecked(f, cfg)
}

fn derivative_unchecked(f: &ExplicitFamily, cfg: &DerivativeConfig) -> Result<ExplicitFamily> {
    let witnesses = witness_blocks(f.ground(), cfg.universe)?;
    let members: BTreeSet<DisjointCollection> = f
        .members()
        .filter(|s| survives(f, s, &witnesses, cfg.m))
        .cloned()
        .collect();
    Ok(f.with_members(members))
}

/// Iterate the derivative to the empty family; the step count is the
/// surrogate index. A nonempty fixed point stalls instead of looping.
pub fn cb_index_m(f: &ExplicitFamily, cfg: &DerivativeConfig) -> Result<CbIndex> {
    if !is_hereditary(f)? {
        return Err(Error::NotHereditary);
    }
    let mut cur = f.clone();
    let mut trace = vec![cur.len()];
    let mut steps = 0;
    loop {
        if cur.is_empty() {
            return Ok(CbIndex {
                index: Some(steps),
                trace,
                stalled: false,
            });
        }
        let next = derivative_unchecked(&cur, cfg)?;
        if next == cur {
            return Ok(CbIndex {
                index: None,
                trace,
                stalled: true,
            });
        }
        trace.push(next.len());
        steps += 1;
        cur = next;
    }
}

/// The hereditary closure of B^xi over the ground, as an explicit family.
pub fn build_schreier_family(xi: &Ordinal, ground: &DisjointCollection) -> Result<ExplicitFamily> {
    let complete = enumerate_b(xi, ground, true)?;
    let f = make_family(ground.clone(), complete)?;
    closure(&f, ClosureKind::StarDown)
}

/// Warns when a finite xi = k falls outside the calibrated window
/// k < m <= n - k for an n-block ground.
pub fn window_warning(xi: &Ordinal, ground: &DisjointCollection, m: usize) -> Option<String> {
    let k = xi.as_nat()? as usize;
    let n = ground.len();
    if k >= 1 && !(k < m && m + k <= n) {
        Some(format!(
            "threshold m={m} outside the calibrated window {k} < m <= {} for xi={k}, n={n}",
            n.saturating_sub(k)
        ))
    } else {
        None
    }
}

/// Exhaustive check for a nonempty sub-collection D' of the ground with
/// B^{<omega}(D') entirely inside F. Test instrumentation only.
pub fn has_full_subcollection(f: &ExplicitFamily) -> Result<bool> {
    for d in subcollections(f.ground())? {
        if d.is_empty() {
            continue;
        }
        if subcollections(&d)?.iter().all(|t| f.contains(t)) {
            return Ok(true);
        }
    }
    Ok(false)
}
