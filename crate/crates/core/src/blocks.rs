//! Disjoint-collection algebra: FU-sets, the refinement preorder, the block
//! families B^xi (membership and canonical decomposition via the minima
//! projection), and the four transforms on explicit finite families
//! (star-closures and the largest hereditary / tree subfamilies).

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::config;
use crate::error::{Error, Result};
use crate::ordinal::Ordinal;
use crate::schreier::{self, FiniteSet, PeelResult};

/// A successive sequence of nonempty blocks: max s_i < min s_{i+1}.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<FiniteSet>", into = "Vec<FiniteSet>")]
pub struct DisjointCollection(Vec<FiniteSet>);

impl DisjointCollection {
    pub fn new(blocks: Vec<FiniteSet>) -> Result<Self> {
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::InvalidCollection("empty block".into()));
            }
        }
        for w in blocks.windows(2) {
            let (hi, lo) = (w[0].max_elem().unwrap(), w[1].min_elem().unwrap());
            if hi >= lo {
                return Err(Error::InvalidCollection(format!(
                    "blocks not successive: max {hi} >= min {lo}"
                )));
            }
        }
        Ok(DisjointCollection(blocks))
    }

    pub fn empty() -> Self {
        DisjointCollection(Vec::new())
    }

    pub fn blocks(&self) -> &[FiniteSet] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The sequence of block minima as a finite set (strictly increasing by
    /// successiveness).
    pub fn minima(&self) -> FiniteSet {
        FiniteSet::new(self.0.iter().map(|b| b.min_elem().unwrap()).collect())
            .expect("successive blocks have increasing minima")
    }

    pub fn initial_segment(&self, k: usize) -> DisjointCollection {
        DisjointCollection(self.0[..k].to_vec())
    }

    pub fn is_initial_segment_of(&self, other: &DisjointCollection) -> bool {
        other.0.starts_with(&self.0)
    }
}

impl TryFrom<Vec<FiniteSet>> for DisjointCollection {
    type Error = Error;
    fn try_from(v: Vec<FiniteSet>) -> Result<Self> {
        DisjointCollection::new(v)
    }
}

impl From<DisjointCollection> for Vec<FiniteSet> {
    fn from(c: DisjointCollection) -> Vec<FiniteSet> {
        c.0
    }
}

impl fmt::Debug for DisjointCollection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b:?}")?;
        }
        write!(f, ")")
    }
}

/// Validating constructor matching the wire format.
pub fn make_collection(blocks: Vec<FiniteSet>) -> Result<DisjointCollection> {
    DisjointCollection::new(blocks)
}

/// FU(D): every union of a nonempty subset of D's blocks, sorted
/// lexicographically (which orders by minimum first).
pub fn fu_enumerate(d: &DisjointCollection) -> Result<Vec<FiniteSet>> {
    let k = d.len();
    if k > config::fu_cap() {
        return Err(Error::CapExceeded(format!(
            "{k} blocks exceeds FU cap {}",
            config::fu_cap()
        )));
    }
    let mut out = Vec::with_capacity((1usize << k).saturating_sub(1));
    for mask in 1u32..(1u32 << k) {
        let mut u = FiniteSet::empty();
        for (i, b) in d.blocks().iter().enumerate() {
            if mask >> i & 1 == 1 {
                u = u.union(b)?;
            }
        }
        out.push(u);
    }
    out.sort();
    Ok(out)
}

/// Membership in B^xi: the block minima form an A_xi element. B^0 = {empty}.
pub fn member_b(c: &DisjointCollection, xi: &Ordinal) -> bool {
    if xi.is_zero() {
        return c.is_empty();
    }
    !c.is_empty() && schreier::member_a(&c.minima(), xi)
}

/// True iff `c` is a proper initial segment of some B^xi element: its minima
/// peel to Partial. (A complete proper prefix rules out every extension, by
/// thinness.)
pub fn is_proper_initial_segment_b(c: &DisjointCollection, xi: &Ordinal) -> bool {
    assert!(!xi.is_zero());
    schreier::peel_a(&c.minima(), xi) == PeelResult::Partial
}

/// Canonical representation of `c` with respect to B^xi: the A_xi
/// decomposition of the minima, with blocks regrouped to match.
pub fn decompose_b(
    c: &DisjointCollection,
    xi: &Ordinal,
) -> (Vec<DisjointCollection>, DisjointCollection) {
    assert!(!xi.is_zero());
    let d = schreier::decompose_a(&c.minima(), xi);
    let mut pieces = Vec::new();
    let mut at = 0;
    for p in &d.pieces {
        let l = p.len();
        pieces.push(DisjointCollection(c.blocks()[at..at + l].to_vec()));
        at += l;
    }
    (pieces, DisjointCollection(c.blocks()[at..].to_vec()))
}

/// True iff every block of `d1` is a union of blocks of `d2`.
pub fn refines(d1: &DisjointCollection, d2: &DisjointCollection) -> bool {
    d1.blocks().iter().all(|b| {
        let mut covered = FiniteSet::empty();
        for t in d2.blocks() {
            if t.is_subset(b) {
                covered = covered.union(t).expect("subsets of one block are disjoint");
            }
        }
        covered == *b
    })
}

/// Every disjoint collection whose blocks are unions of blocks of `d`,
/// including the empty collection; this is {d}_* and also B^{<omega}(d).
///
/// DFS over block indices: each block is skipped, merged into the open
/// group, or closes the open group and starts a new one. Groups may skip
/// over intermediate blocks; successiveness only constrains group order.
pub fn subcollections(d: &DisjointCollection) -> Result<Vec<DisjointCollection>> {
    if d.len() > config::fu_cap() {
        return Err(Error::CapExceeded(format!(
            "{} blocks exceeds FU cap {}",
            d.len(),
            config::fu_cap()
        )));
    }
    let mut out = vec![DisjointCollection::empty()];
    let mut groups: Vec<FiniteSet> = Vec::new();
    sub_dfs(d.blocks(), 0, &mut groups, &mut out)?;
    out.sort();
    out.dedup();
    Ok(out)
}

fn sub_dfs(
    blocks: &[FiniteSet],
    i: usize,
    groups: &mut Vec<FiniteSet>,
    out: &mut Vec<DisjointCollection>,
) -> Result<()> {
    if i == blocks.len() {
        if !groups.is_empty() {
            if out.len() >= config::family_cap() {
                return Err(Error::CapExceeded(format!(
                    "family cap {} while enumerating subcollections",
                    config::family_cap()
                )));
            }
            out.push(DisjointCollection(groups.clone()));
        }
        return Ok(());
    }
    // skip block i
    sub_dfs(blocks, i + 1, groups, out)?;
    // merge into the open group
    if let Some(last) = groups.last().cloned() {
        let merged = last.union(&blocks[i]).expect("successive blocks disjoint");
        *groups.last_mut().unwrap() = merged;
        sub_dfs(blocks, i + 1, groups, out)?;
        *groups.last_mut().unwrap() = last;
    }
    // open a new group at block i
    groups.push(blocks[i].clone());
    sub_dfs(blocks, i + 1, groups, out)?;
    groups.pop();
    Ok(())
}

/// An explicitly enumerated family of collections over a finite ground.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "FamilyRaw", into = "FamilyRaw")]
pub struct ExplicitFamily {
    ground: DisjointCollection,
    members: BTreeSet<DisjointCollection>,
}

#[derive(Serialize, Deserialize)]
struct FamilyRaw {
    ground: DisjointCollection,
    members: Vec<DisjointCollection>,
}

impl TryFrom<FamilyRaw> for ExplicitFamily {
    type Error = Error;
    fn try_from(raw: FamilyRaw) -> Result<Self> {
        make_family(raw.ground, raw.members)
    }
}

impl From<ExplicitFamily> for FamilyRaw {
    fn from(f: ExplicitFamily) -> FamilyRaw {
        FamilyRaw {
            ground: f.ground,
            members: f.members.into_iter().collect(),
        }
    }
}

impl ExplicitFamily {
    pub fn ground(&self) -> &DisjointCollection {
        &self.ground
    }

    pub fn members(&self) -> impl Iterator<Item = &DisjointCollection> {
        self.members.iter()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, c: &DisjointCollection) -> bool {
        self.members.contains(c)
    }

    pub fn is_subfamily_of(&self, other: &ExplicitFamily) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Same ground, different member set; callers guarantee validity.
    pub(crate) fn with_members(&self, members: BTreeSet<DisjointCollection>) -> ExplicitFamily {
        ExplicitFamily {
            ground: self.ground.clone(),
            members,
        }
    }
}

/// Validating family constructor: every member must refine the ground.
pub fn make_family(
    ground: DisjointCollection,
    members: Vec<DisjointCollection>,
) -> Result<ExplicitFamily> {
    if members.len() > config::family_cap() {
        return Err(Error::CapExceeded(format!(
            "{} members exceeds family cap {}",
            members.len(),
            config::family_cap()
        )));
    }
    for m in &members {
        if !refines(m, &ground) {
            return Err(Error::InvalidCollection(format!(
                "member {m:?} has a block outside FU(ground)"
            )));
        }
    }
    Ok(ExplicitFamily {
        ground,
        members: members.into_iter().collect(),
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ClosureKind {
    /// F_*: everything refining a member.
    StarDown,
    /// F^*: every initial segment of a member.
    StarUp,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PartKind {
    /// F_h: members all of whose refinements stay in F.
    Hereditary,
    /// F_t: members all of whose initial segments stay in F.
    Tree,
}

/// The star-closures of Def-style family algebra; both include the empty
/// collection.
pub fn closure(f: &ExplicitFamily, kind: ClosureKind) -> Result<ExplicitFamily> {
    let mut members: BTreeSet<DisjointCollection> = BTreeSet::new();
    members.insert(DisjointCollection::empty());
    for s in f.members() {
        match kind {
            ClosureKind::StarDown => {
                for t in subcollections(s)? {
                    members.insert(t);
                }
            }
            ClosureKind::StarUp => {
                for k in 0..=s.len() {
                    members.insert(s.initial_segment(k));
                }
            }
        }
        if members.len() > config::family_cap() {
            return Err(Error::CapExceeded(format!(
                "closure exceeds family cap {}",
                config::family_cap()
            )));
        }
    }
    Ok(f.with_members(members))
}

/// The largest hereditary (resp. tree) subfamily of F, plus the empty
/// collection.
pub fn part(f: &ExplicitFamily, kind: PartKind) -> Result<ExplicitFamily> {
    let mut members: BTreeSet<DisjointCollection> = BTreeSet::new();
    members.insert(DisjointCollection::empty());
    for s in f.members() {
        let keep = match kind {
            PartKind::Hereditary => subcollections(s)?.iter().all(|t| f.contains(t)),
            PartKind::Tree => (0..s.len()).all(|k| f.contains(&s.initial_segment(k))),
        };
        if keep {
            members.insert(s.clone());
        }
    }
    Ok(f.with_members(members))
}

/// B^{<omega}(ground) (complete_only = false) or its B^xi members
/// (complete_only = true), sorted.
pub fn enumerate_b(
    xi: &Ordinal,
    ground: &DisjointCollection,
    complete_only: bool,
) -> Result<Vec<DisjointCollection>> {
    let mut all = subcollections(ground)?;
    if complete_only {
        all.retain(|c| member_b(c, xi));
    }
    Ok(all)
}
