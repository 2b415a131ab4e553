//! Desk-scale witness search: find a disjoint collection whose FU-set
//! (Hindman mode) or complete-B^xi set (xi mode) is monochromatic under a
//! catalog coloring, and verify claimed witnesses.
//!
//! Colorings form a closed catalog plus xor-composition so behavior stays
//! deterministic and serializable. Candidate blocks are tried in
//! (max element, then lexicographic) order, which makes "least witness"
//! well-defined and gives monotone solvability in the universe bound.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::blocks::{enumerate_b, fu_enumerate, DisjointCollection};
use crate::config;
use crate::error::{Error, Result};
use crate::ordinal::Ordinal;
use crate::schreier::FiniteSet;

/// Wire form of a coloring: {"name": "parity_of", "params": ["min"],
/// "colors": 2}. Xor takes two nested specs as params.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ColoringSpec {
    pub name: String,
    #[serde(default)]
    pub params: Vec<serde_json::Value>,
    pub colors: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ParityKey {
    Min,
    Max,
    Size,
    Sum,
}

/// Total deterministic coloring of blocks.
#[derive(Clone, Debug)]
pub enum BlockColoring {
    Const(u32),
    ParityOf(ParityKey),
    Xor(Box<BlockColoring>, Box<BlockColoring>),
}

/// Total deterministic coloring of collections.
#[derive(Clone, Debug)]
pub enum CollectionColoring {
    Const(u32),
    SizeMod(u32),
    FirstMinMod(u32),
    Xor(Box<CollectionColoring>, Box<CollectionColoring>),
}

impl BlockColoring {
    pub fn color(&self, s: &FiniteSet) -> u32 {
        match self {
            BlockColoring::Const(c) => *c,
            BlockColoring::ParityOf(key) => {
                let v = match key {
                    ParityKey::Min => s.min_elem().unwrap_or(0) as u64,
                    ParityKey::Max => s.max_elem().unwrap_or(0) as u64,
                    ParityKey::Size => s.len() as u64,
                    ParityKey::Sum => s.elements().iter().map(|&e| e as u64).sum(),
                };
                (v % 2) as u32
            }
            BlockColoring::Xor(a, b) => (a.color(s) ^ b.color(s)) & 1,
        }
    }

    pub fn from_spec(spec: &ColoringSpec) -> Result<Self> {
        if spec.colors < 2 {
            return Err(Error::Invalid("colorings need at least 2 colors".into()));
        }
        match spec.name.as_str() {
            "const" => Ok(BlockColoring::Const(param_u32(spec, 0)?)),
            "parity_of" => Ok(BlockColoring::ParityOf(parity_key(spec)?)),
            "xor" => {
                let (a, b) = xor_specs(spec)?;
                Ok(BlockColoring::Xor(
                    Box::new(BlockColoring::from_spec(&a)?),
                    Box::new(BlockColoring::from_spec(&b)?),
                ))
            }
            other => Err(Error::Invalid(format!("unknown block coloring '{other}'"))),
        }
    }
}

impl CollectionColoring {
    pub fn color(&self, c: &DisjointCollection) -> u32 {
        match self {
            CollectionColoring::Const(v) => *v,
            CollectionColoring::SizeMod(k) => c.len() as u32 % k,
            CollectionColoring::FirstMinMod(k) => {
                c.blocks().first().map_or(0, |b| b.min_elem().unwrap()) % k
            }
            CollectionColoring::Xor(a, b) => (a.color(c) ^ b.color(c)) & 1,
        }
    }

    pub fn from_spec(spec: &ColoringSpec) -> Result<Self> {
        if spec.colors < 2 {
            return Err(Error::Invalid("colorings need at least 2 colors".into()));
        }
        match spec.name.as_str() {
            "const" => Ok(CollectionColoring::Const(param_u32(spec, 0)?)),
            "size_mod" => Ok(CollectionColoring::SizeMod(positive(param_u32(spec, 0)?)?)),
            "first_min_mod" => Ok(CollectionColoring::FirstMinMod(positive(param_u32(
                spec, 0,
            )?)?)),
            "xor" => {
                let (a, b) = xor_specs(spec)?;
                Ok(CollectionColoring::Xor(
                    Box::new(CollectionColoring::from_spec(&a)?),
                    Box::new(CollectionColoring::from_spec(&b)?),
                ))
            }
            other => Err(Error::Invalid(format!(
                "unknown collection coloring '{other}'"
            ))),
        }
    }
}

fn positive(k: u32) -> Result<u32> {
    if k == 0 {
        Err(Error::Invalid("modulus must be positive".into()))
    } else {
        Ok(k)
    }
}

fn param_u32(spec: &ColoringSpec, i: usize) -> Result<u32> {
    spec.params
        .get(i)
        .and_then(|v| v.as_u64())
        .and_then(|v| u32::try_from(v).ok())
        .ok_or_else(|| Error::Invalid(format!("coloring '{}' needs integer param {i}", spec.name)))
}

fn parity_key(spec: &ColoringSpec) -> Result<ParityKey> {
    match spec.params.first().and_then(|v| v.as_str()) {
        Some("min") => Ok(ParityKey::Min),
        Some("max") => Ok(ParityKey::Max),
        Some("size") => Ok(ParityKey::Size),
        Some("sum") => Ok(ParityKey::Sum),
        _ => Err(Error::Invalid(
            "parity_of needs one of min|max|size|sum".into(),
        )),
    }
}

fn xor_specs(spec: &ColoringSpec) -> Result<(ColoringSpec, ColoringSpec)> {
    if spec.params.len() != 2 {
        return Err(Error::Invalid("xor needs two nested colorings".into()));
    }
    let a = serde_json::from_value(spec.params[0].clone())
        .map_err(|e| Error::Invalid(format!("xor param: {e}")))?;
    let b = serde_json::from_value(spec.params[1].clone())
        .map_err(|e| Error::Invalid(format!("xor param: {e}")))?;
    Ok((a, b))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SearchOutcome {
    Witness {
        collection: DisjointCollection,
        color: Option<u32>,
        /// No complete B^xi member existed within bounds.
        vacuous: bool,
    },
    Exhausted {
        bound: u32,
    },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SearchReport {
    #[serde(flatten)]
    pub outcome: SearchOutcome,
    pub nodes: u64,
    pub elapsed_ms: u64,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum MonoResult {
    Monochromatic {
        color: Option<u32>,
        vacuous: bool,
    },
    FuViolation {
        a: FiniteSet,
        color_a: u32,
        b: FiniteSet,
        color_b: u32,
    },
    XiViolation {
        a: DisjointCollection,
        color_a: u32,
        b: DisjointCollection,
        color_b: u32,
    },
}

/// Candidate blocks inside {start..=bound} in (max element, then
/// lexicographic) search order.
fn candidate_blocks(start: u32, bound: u32) -> Vec<FiniteSet> {
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << (bound - start + 1)) {
        let s: Vec<u32> = (start..=bound)
            .filter(|&e| mask >> (e - start) & 1 == 1)
            .collect();
        out.push(FiniteSet::new(s).unwrap());
    }
    out.sort_by(|a, b| {
        (a.max_elem(), a.elements()).cmp(&(b.max_elem(), b.elements()))
    });
    out
}

struct Budget {
    nodes: u64,
    limit: u64,
}

impl Budget {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.limit {
            Err(Error::BudgetExceeded {
                budget: self.limit,
                nodes: self.nodes,
            })
        } else {
            Ok(())
        }
    }
}

/// Least m-block collection in {1..bound} whose whole FU-set has one color.
///
/// Backtracking with incremental pruning: adding a block is allowed only
/// when every new union (the block joined with any previous union) keeps
/// the color of the first block.
pub fn hindman_search(coloring: &BlockColoring, m: usize, bound: u32) -> Result<SearchReport> {
    assert!(m >= 1 && bound >= 1);
    let started = Instant::now();
    let candidates = candidate_blocks(1, bound);
    let mut budget = Budget {
        nodes: 0,
        limit: config::node_budget(),
    };
    let mut chosen: Vec<FiniteSet> = Vec::new();
    let mut unions: Vec<FiniteSet> = Vec::new();
    let found = hindman_dfs(coloring, m, &candidates, &mut chosen, &mut unions, 0, &mut budget)?;
    let outcome = match found {
        Some((collection, color)) => SearchOutcome::Witness {
            collection,
            color: Some(color),
            vacuous: false,
        },
        None => SearchOutcome::Exhausted { bound },
    };
    Ok(SearchReport {
        outcome,
        nodes: budget.nodes,
        elapsed_ms: started.elapsed().as_millis() as u64,
    })
}

fn hindman_dfs(
    coloring: &BlockColoring,
    m: usize,
    candidates: &[FiniteSet],
    chosen: &mut Vec<FiniteSet>,
    unions: &mut Vec<FiniteSet>,
    target: u32,
    budget: &mut Budget,
) -> Result<Option<(DisjointCollection, u32)>> {
    if chosen.len() == m {
        let d = DisjointCollection::new(chosen.clone()).expect("successive by construction");
        return Ok(Some((d, target)));
    }
    let floor = chosen.last().map(|b| b.max_elem().unwrap()).unwrap_or(0);
    for b in candidates {
        if b.min_elem().unwrap() <= floor {
            continue;
        }
        budget.tick()?;
        let target = if chosen.is_empty() {
            coloring.color(b)
        } else {
            target
        };
        if coloring.color(b) != target {
            continue;
        }
        let mut new_unions = vec![b.clone()];
        let mut ok = true;
        for u in unions.iter() {
            let joined = u.union(b).expect("successive blocks disjoint");
            if coloring.color(&joined) != target {
                ok = false;
                break;
            }
            new_unions.push(joined);
        }
        if !ok {
            continue;
        }
        chosen.push(b.clone());
        let keep = unions.len();
        unions.extend(new_unions);
        let found = hindman_dfs(coloring, m, candidates, chosen, unions, target, budget)?;
        unions.truncate(keep);
        chosen.pop();
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Least m-block collection in {start..bound} whose complete B^xi members
/// all share one color. A collection with no complete member within bounds
/// is returned as a vacuous witness, flagged.
pub fn xi_mono_search(
    coloring: &CollectionColoring,
    xi: &Ordinal,
    m: usize,
    bound: u32,
    start: u32,
) -> Result<SearchReport> {
    assert!(m >= 1 && start >= 1 && bound >= start);
    assert!(!xi.is_zero());
    let started = Instant::now();
    let candidates = candidate_blocks(start, bound);
    let mut budget = Budget {
        nodes: 0,
        limit: config::node_budget(),
    };
    let mut chosen: Vec<FiniteSet> = Vec::new();
    let found = xi_dfs(coloring, xi, m, &candidates, &mut chosen, &mut budget)?;
    let outcome = match found {
        Some((collection, color, vacuous)) => SearchOutcome::Witness {
            collection,
            color,
            vacuous,
        },
        None => SearchOutcome::Exhausted { bound },
    };
    Ok(SearchReport {
        outcome,
        nodes: budget.nodes,
        elapsed_ms: started.elapsed().as_millis() as u64,
    })
}

type XiWitness = (DisjointCollection, Option<u32>, bool);

fn xi_dfs(
    coloring: &CollectionColoring,
    xi: &Ordinal,
    m: usize,
    candidates: &[FiniteSet],
    chosen: &mut Vec<FiniteSet>,
    budget: &mut Budget,
) -> Result<Option<XiWitness>> {
    if chosen.len() == m {
        let d = DisjointCollection::new(chosen.clone()).expect("successive by construction");
        return Ok(match check_xi_mono(&d, coloring, xi)? {
            MonoResult::Monochromatic { color, vacuous } => Some((d, color, vacuous)),
            _ => None,
        });
    }
    let floor = chosen.last().map(|b| b.max_elem().unwrap()).unwrap_or(0);
    for b in candidates {
        if b.min_elem().unwrap() <= floor {
            continue;
        }
        budget.tick()?;
        chosen.push(b.clone());
        let found = xi_dfs(coloring, xi, m, candidates, chosen, budget)?;
        chosen.pop();
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

fn check_xi_mono(
    d: &DisjointCollection,
    coloring: &CollectionColoring,
    xi: &Ordinal,
) -> Result<MonoResult> {
    let complete = enumerate_b(xi, d, true)?;
    let Some(first) = complete.first() else {
        return Ok(MonoResult::Monochromatic {
            color: None,
            vacuous: true,
        });
    };
    let color = coloring.color(first);
    for c in &complete[1..] {
        if coloring.color(c) != color {
            return Ok(MonoResult::XiViolation {
                a: first.clone(),
                color_a: color,
                b: c.clone(),
                color_b: coloring.color(c),
            });
        }
    }
    Ok(MonoResult::Monochromatic {
        color: Some(color),
        vacuous: false,
    })
}

/// Exhaustive verification of a claimed Hindman witness.
pub fn verify_fu_mono(d: &DisjointCollection, coloring: &BlockColoring) -> Result<MonoResult> {
    let fu = fu_enumerate(d)?;
    let Some(first) = fu.first() else {
        return Ok(MonoResult::Monochromatic {
            color: None,
            vacuous: true,
        });
    };
    let color = coloring.color(first);
    for s in &fu[1..] {
        if coloring.color(s) != color {
            return Ok(MonoResult::FuViolation {
                a: first.clone(),
                color_a: color,
                b: s.clone(),
                color_b: coloring.color(s),
            });
        }
    }
    Ok(MonoResult::Monochromatic {
        color: Some(color),
        vacuous: false,
    })
}

/// Exhaustive verification of a claimed xi-monochromatic witness.
pub fn verify_xi_mono(
    d: &DisjointCollection,
    coloring: &CollectionColoring,
    xi: &Ordinal,
) -> Result<MonoResult> {
    check_xi_mono(d, coloring, xi)
}
