//! Independent reference implementations used to cross-check the greedy
//! algorithms: a splitting-based A_xi membership test, closed forms, a
//! brute-force decomposition counter, and exhaustive search oracles. Nothing
//! here shares code with the production paths.

use crate::blocks::DisjointCollection;
use crate::ordinal::{Ordinal, OrdinalClass};
use crate::partition::{BlockColoring, CollectionColoring, MonoResult};
use crate::schreier::FiniteSet;

/// A_xi membership by exhaustive splitting instead of greedy peeling.
pub fn member_a_naive(s: &[u32], xi: &Ordinal) -> bool {
    match xi.classify() {
        OrdinalClass::Zero => s.is_empty(),
        OrdinalClass::Successor(zeta) => !s.is_empty() && member_a_naive(&s[1..], &zeta),
        OrdinalClass::PowerSuccExp(beta) => {
            let Some(&n) = s.first() else { return false };
            let spec = vec![Ordinal::omega_pow(&beta); n as usize];
            split_into(s, &spec)
        }
        OrdinalClass::PowerLimitExp(lambda) => {
            let Some(&n) = s.first() else { return false };
            let rung = lambda.ladder(n as u64).unwrap();
            member_a_naive(s, &Ordinal::omega_pow(&rung))
        }
        OrdinalClass::CompositeLimit { p, a, parts } => {
            let mut spec = Vec::new();
            for (pi, ai) in parts.iter().rev() {
                spec.extend(vec![Ordinal::omega_pow(ai); *pi as usize]);
            }
            spec.extend(vec![Ordinal::omega_pow(&a); p as usize]);
            split_into(s, &spec)
        }
    }
}

/// Can `s` be cut into consecutive pieces matching `spec`, trying every
/// composition?
fn split_into(s: &[u32], spec: &[Ordinal]) -> bool {
    match spec.split_first() {
        None => s.is_empty(),
        Some((first, rest)) => (1..=s.len()).any(|l| {
            member_a_naive(&s[..l], first) && split_into(&s[l..], rest)
        }),
    }
}

/// Closed form for A_omega: |s| = min s.
pub fn a_omega_closed(s: &FiniteSet) -> bool {
    s.min_elem().is_some_and(|n| s.len() as u32 == n)
}

/// Closed form for B^k: exactly k blocks.
pub fn b_k_closed(c: &DisjointCollection, k: usize) -> bool {
    !c.is_empty() && c.len() == k
}

/// Closed form for B^omega: |c| = min of the first block.
pub fn b_omega_closed(c: &DisjointCollection) -> bool {
    c.blocks()
        .first()
        .is_some_and(|b| c.len() as u32 == b.min_elem().unwrap())
}

/// Number of ways to write `s` as consecutive naive A_xi pieces followed by
/// an admissible tail (one with no complete initial segment). The canonical
/// representation is unique iff this count is 1.
pub fn count_splittings(s: &[u32], xi: &Ordinal) -> usize {
    let tail_ok = (0..=s.len()).all(|l| !member_a_naive(&s[..l], xi));
    let mut count = usize::from(tail_ok);
    for l in 1..=s.len() {
        if member_a_naive(&s[..l], xi) {
            count += count_splittings(&s[l..], xi);
        }
    }
    count
}

/// All m-block collections within {1..bound} in (max element, then
/// lexicographic) block order; shared by the search oracles.
pub fn all_collections(m: usize, bound: u32) -> Vec<DisjointCollection> {
    let mut blocks: Vec<FiniteSet> = (1u32..(1 << bound))
        .map(|mask| {
            FiniteSet::new((1..=bound).filter(|&e| mask >> (e - 1) & 1 == 1).collect()).unwrap()
        })
        .collect();
    blocks.sort_by(|a, b| (a.max_elem(), a.elements()).cmp(&(b.max_elem(), b.elements())));
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    collect_dfs(&blocks, m, &mut chosen, &mut out);
    out
}

fn collect_dfs(
    blocks: &[FiniteSet],
    m: usize,
    chosen: &mut Vec<FiniteSet>,
    out: &mut Vec<DisjointCollection>,
) {
    if chosen.len() == m {
        out.push(DisjointCollection::new(chosen.clone()).unwrap());
        return;
    }
    let floor = chosen.last().map(|b| b.max_elem().unwrap()).unwrap_or(0);
    for b in blocks {
        if b.min_elem().unwrap() > floor {
            chosen.push(b.clone());
            collect_dfs(blocks, m, chosen, out);
            chosen.pop();
        }
    }
}

/// First m-block collection whose FU-set is monochromatic, by full
/// enumeration in search order.
pub fn hindman_brute(coloring: &BlockColoring, m: usize, bound: u32) -> Option<DisjointCollection> {
    all_collections(m, bound).into_iter().find(|d| {
        matches!(
            crate::partition::verify_fu_mono(d, coloring),
            Ok(MonoResult::Monochromatic { .. })
        )
    })
}

/// First m-block collection monochromatic (or vacuous) on complete B^xi
/// members, by full enumeration in search order.
pub fn xi_brute(
    coloring: &CollectionColoring,
    xi: &Ordinal,
    m: usize,
    bound: u32,
) -> Option<DisjointCollection> {
    all_collections(m, bound).into_iter().find(|d| {
        matches!(
            crate::partition::verify_xi_mono(d, coloring, xi),
            Ok(MonoResult::Monochromatic { .. })
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinal::parse_ordinal;
    use crate::schreier::member_a;

    fn ord(s: &str) -> Ordinal {
        parse_ordinal(s).unwrap()
    }

    #[test]
    fn naive_agrees_with_greedy() {
        for xi in ["1", "2", "3", "w", "w+1", "w*2", "w^2", "w^2+w*2+1", "w^w"] {
            let xi = ord(xi);
            for mask in 0u32..(1 << 9) {
                let v: Vec<u32> = (1..=9).filter(|&e| mask >> (e - 1) & 1 == 1).collect();
                let s = FiniteSet::new(v.clone()).unwrap();
                assert_eq!(
                    member_a_naive(&v, &xi),
                    member_a(&s, &xi),
                    "disagreement at xi={xi}, s={s:?}"
                );
            }
        }
    }

    #[test]
    fn closed_forms_spot() {
        assert!(a_omega_closed(&FiniteSet::new(vec![3, 7, 10]).unwrap()));
        assert!(!a_omega_closed(&FiniteSet::new(vec![3, 5]).unwrap()));
    }

    #[test]
    fn splitting_counts() {
        assert_eq!(count_splittings(&[1, 2, 3], &ord("1")), 1);
        assert_eq!(count_splittings(&[2, 3, 4, 5, 6], &ord("w")), 1);
        assert_eq!(count_splittings(&[], &ord("w")), 1);
    }

    #[test]
    fn collection_count() {
        // 2-block collections over {1..3}: ({1},{2}),({1},{3}),({1},{2,3}),
        // ({2},{3}),({1,2},{3})
        assert_eq!(all_collections(2, 3).len(), 5);
    }
}
