//! The binary-encoding bijection phi between nonempty finite sets and
//! positive integers, the c function, xi-sum-sets P^xi(L), and the transport
//! inclusion P^xi(L) into the phi-image of B^xi over the source collection.

use serde::Serialize;

use crate::blocks::{enumerate_b, DisjointCollection};
use crate::config;
use crate::error::{Error, Result};
use crate::ordinal::Ordinal;
use crate::schreier::{member_a, FiniteSet};

/// phi(s) = sum of 2^(l-1) over l in s: the bitmask of s.
pub fn phi(s: &FiniteSet) -> Result<u64> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut n = 0u64;
    for &l in s.elements() {
        if l > 64 {
            return Err(Error::CapExceeded(format!(
                "element {l} exceeds the 64-bit encoding range"
            )));
        }
        n |= 1u64 << (l - 1);
    }
    Ok(n)
}

/// The unique s with phi(s) = n: the 1-indexed bit positions of n.
pub fn phi_inv(n: u64) -> Result<FiniteSet> {
    if n == 0 {
        return Err(Error::Invalid("phi_inv requires n >= 1".into()));
    }
    FiniteSet::new((1..=64).filter(|&l| n >> (l - 1) & 1 == 1).collect())
}

/// c(n) = min of phi_inv(n): the 1-based index of the least set bit.
pub fn c_min(n: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::Invalid("c requires n >= 1".into()));
    }
    Ok(n.trailing_zeros() + 1)
}

/// Which tuples of a sum-set to produce.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SumsetMode {
    /// Tuples whose c-transformed minima form an A_xi element.
    Xi(Ordinal),
    /// All tuples of exactly k pieces, no A_xi condition.
    KFold(usize),
    /// All tuples of every length.
    All,
}

/// A tuple of subset sums.
pub type SumTuple = Vec<u64>;

/// P^xi(L) / k-fold / full sum-set of a finite L, as sorted deduplicated
/// tuples. Pieces are successive subsets of L (max of one below min of the
/// next); in Xi mode a tuple survives only when the c-values of the piece
/// minima strictly increase and form an A_xi element.
pub fn sumset_p(l: &[u64], mode: &SumsetMode) -> Result<Vec<SumTuple>> {
    for w in l.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::InvalidSet("L must be strictly increasing".into()));
        }
    }
    if l.first().is_some_and(|&x| x == 0) {
        return Err(Error::InvalidSet("L must be positive".into()));
    }
    if l.len() > config::fu_cap() {
        return Err(Error::CapExceeded(format!(
            "|L| = {} exceeds cap {}",
            l.len(),
            config::fu_cap()
        )));
    }
    let mut out: Vec<SumTuple> = Vec::new();
    let mut groups: Vec<(u64, u64)> = Vec::new(); // (sum, min) per piece
    sum_dfs(l, 0, &mut groups, mode, &mut out)?;
    out.sort();
    out.dedup();
    Ok(out)
}

fn sum_dfs(
    l: &[u64],
    i: usize,
    groups: &mut Vec<(u64, u64)>,
    mode: &SumsetMode,
    out: &mut Vec<SumTuple>,
) -> Result<()> {
    if i == l.len() {
        if !groups.is_empty() && tuple_admitted(groups, mode)? {
            if out.len() >= config::family_cap() {
                return Err(Error::CapExceeded(format!(
                    "sum-set exceeds cap {}",
                    config::family_cap()
                )));
            }
            out.push(groups.iter().map(|&(sum, _)| sum).collect());
        }
        return Ok(());
    }
    // skip l[i]
    sum_dfs(l, i + 1, groups, mode, out)?;
    // extend the open piece
    if let Some(&(sum, min)) = groups.last() {
        *groups.last_mut().unwrap() = (sum + l[i], min);
        sum_dfs(l, i + 1, groups, mode, out)?;
        *groups.last_mut().unwrap() = (sum, min);
    }
    // start a new piece at l[i]
    groups.push((l[i], l[i]));
    sum_dfs(l, i + 1, groups, mode, out)?;
    groups.pop();
    Ok(())
}

fn tuple_admitted(groups: &[(u64, u64)], mode: &SumsetMode) -> Result<bool> {
    match mode {
        SumsetMode::All => Ok(true),
        SumsetMode::KFold(k) => Ok(groups.len() == *k),
        SumsetMode::Xi(xi) => {
            let mut cs = Vec::with_capacity(groups.len());
            for &(_, min) in groups {
                cs.push(c_min(min)?);
            }
            // non-increasing c-values cannot encode a set; excluded
            if cs.windows(2).any(|w| w[0] >= w[1]) {
                return Ok(false);
            }
            Ok(member_a(&FiniteSet::new(cs)?, xi))
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct TransportReport {
    /// P^xi(L) contained in the phi-image of B^xi over D.
    pub holds: bool,
    /// Least sum tuple violating the inclusion, if any.
    pub counterexample: Option<SumTuple>,
    /// The unstated reverse inclusion, reported for information.
    pub reverse_holds: bool,
}

/// Checks the transport inclusion for L = {phi(t) : t in D} by exhausting
/// both sides.
pub fn transport_check(d: &DisjointCollection, xi: &Ordinal) -> Result<TransportReport> {
    let mut l: Vec<u64> = Vec::with_capacity(d.len());
    for t in d.blocks() {
        l.push(phi(t)?);
    }
    // successive blocks have strictly increasing encodings
    debug_assert!(l.windows(2).all(|w| w[0] < w[1]));
    let left = sumset_p(&l, &SumsetMode::Xi(xi.clone()))?;
    let mut right: Vec<SumTuple> = Vec::new();
    for c in enumerate_b(xi, d, true)? {
        let mut tuple = Vec::with_capacity(c.len());
        for b in c.blocks() {
            tuple.push(phi(b)?);
        }
        right.push(tuple);
    }
    right.sort();
    let counterexample = left
        .iter()
        .find(|t| right.binary_search(t).is_err())
        .cloned();
    let reverse_holds = right.iter().all(|t| left.binary_search(t).is_ok());
    Ok(TransportReport {
        holds: counterexample.is_none(),
        counterexample,
        reverse_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinal::parse_ordinal;

    fn ord(s: &str) -> Ordinal {
        parse_ordinal(s).unwrap()
    }

    fn fs(v: &[u32]) -> FiniteSet {
        FiniteSet::new(v.to_vec()).unwrap()
    }

    fn dc(blocks: &[&[u32]]) -> DisjointCollection {
        DisjointCollection::new(blocks.iter().map(|b| fs(b)).collect()).unwrap()
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(&fs(&[1])).unwrap(), 1);
        assert_eq!(phi(&fs(&[1, 3])).unwrap(), 5);
        assert_eq!(phi(&fs(&[2, 3])).unwrap(), 6);
        assert!(phi(&FiniteSet::empty()).is_err());
    }

    #[test]
    fn phi_inv_examples() {
        assert_eq!(phi_inv(6).unwrap(), fs(&[2, 3]));
        assert_eq!(phi_inv(1).unwrap(), fs(&[1]));
        assert_eq!(phi_inv(5).unwrap(), fs(&[1, 3]));
        assert!(phi_inv(0).is_err());
    }

    #[test]
    fn c_examples() {
        assert_eq!(c_min(1).unwrap(), 1);
        assert_eq!(c_min(4).unwrap(), 3);
        assert_eq!(c_min(6).unwrap(), 2);
    }

    #[test]
    fn phi_bijection_order_additivity() {
        for n in 1u64..=1 << 10 {
            assert_eq!(phi(&phi_inv(n).unwrap()).unwrap(), n);
        }
        let a = fs(&[1, 2]);
        let b = fs(&[3, 5]);
        assert!(phi(&a).unwrap() < phi(&b).unwrap());
        assert_eq!(
            phi(&a).unwrap() + phi(&b).unwrap(),
            phi(&a.union(&b).unwrap()).unwrap()
        );
    }

    #[test]
    fn sumset_examples() {
        let p1 = sumset_p(&[1, 2], &SumsetMode::Xi(ord("1"))).unwrap();
        assert_eq!(p1, vec![vec![1], vec![2], vec![3]]);

        let p2 = sumset_p(&[1, 2, 4], &SumsetMode::Xi(ord("2"))).unwrap();
        assert!(p2.contains(&vec![3, 4]), "({{1,2}},{{4}}) missing: {p2:?}");
        assert!(p2.iter().all(|t| t.len() == 2));

        let pw = sumset_p(&[1], &SumsetMode::Xi(ord("w"))).unwrap();
        assert_eq!(pw, vec![vec![1]]);
    }

    #[test]
    fn p1_equals_xi_one() {
        for l in [vec![1u64, 2, 3], vec![2, 5, 9], vec![1, 4, 6, 7]] {
            let xi1 = sumset_p(&l, &SumsetMode::Xi(ord("1"))).unwrap();
            let one_fold = sumset_p(&l, &SumsetMode::KFold(1)).unwrap();
            assert_eq!(xi1, one_fold);
        }
    }

    #[test]
    fn kfold_and_all_modes() {
        let all = sumset_p(&[1, 2], &SumsetMode::All).unwrap();
        assert!(all.contains(&vec![1, 2]));
        assert!(all.contains(&vec![3]));
        let two = sumset_p(&[1, 2], &SumsetMode::KFold(2)).unwrap();
        assert_eq!(two, vec![vec![1, 2]]);
    }

    #[test]
    fn transport_examples() {
        let r = transport_check(&dc(&[&[1], &[2]]), &ord("1")).unwrap();
        assert!(r.holds);
        assert!(r.reverse_holds);
        let r = transport_check(&dc(&[&[1], &[2]]), &ord("2")).unwrap();
        assert!(r.holds);
        let r = transport_check(&dc(&[&[3]]), &ord("1")).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn transport_small_sweep() {
        for xi in ["1", "2", "w"] {
            let xi = ord(xi);
            let r = transport_check(&dc(&[&[1, 2], &[3], &[5, 6]]), &xi).unwrap();
            assert!(r.holds, "xi={xi}");
            assert!(r.reverse_holds, "xi={xi}");
        }
    }
}
