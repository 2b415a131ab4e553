//! The recursive thin Schreier families A_xi: membership, peeling off the
//! unique complete initial segment, canonical decomposition, and bounded
//! enumeration.
//!
//! Greedy peeling is the core algorithmic device. Thinness means a set has at
//! most one initial segment in A_xi, so the greedy split in the power and
//! composite-limit cases is the only possible one.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ordinal::{Ordinal, OrdinalClass};

/// A strictly increasing finite sequence of positive integers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct FiniteSet(Vec<u32>);

impl FiniteSet {
    pub fn new(elements: Vec<u32>) -> Result<Self> {
        for w in elements.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidSet(format!(
                    "elements not strictly increasing at {}..{}",
                    w[0], w[1]
                )));
            }
        }
        if elements.first().is_some_and(|&e| e == 0) {
            return Err(Error::InvalidSet("elements must be >= 1".into()));
        }
        Ok(FiniteSet(elements))
    }

    pub fn empty() -> Self {
        FiniteSet(Vec::new())
    }

    pub fn singleton(n: u32) -> Self {
        assert!(n >= 1);
        FiniteSet(vec![n])
    }

    pub fn elements(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min_elem(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn max_elem(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn contains(&self, n: u32) -> bool {
        self.0.binary_search(&n).is_ok()
    }

    pub fn is_subset(&self, other: &FiniteSet) -> bool {
        self.0.iter().all(|&e| other.contains(e))
    }

    /// Union of two disjoint sets; errors if they intersect.
    pub fn union(&self, other: &FiniteSet) -> Result<FiniteSet> {
        let mut v: Vec<u32> = self.0.iter().chain(other.0.iter()).copied().collect();
        v.sort_unstable();
        for w in v.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidSet(format!("sets share element {}", w[0])));
            }
        }
        Ok(FiniteSet(v))
    }

    /// True iff `self` is a (possibly improper) initial segment of `other`.
    pub fn is_initial_segment_of(&self, other: &FiniteSet) -> bool {
        other.0.starts_with(&self.0)
    }
}

impl TryFrom<Vec<u32>> for FiniteSet {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        FiniteSet::new(v)
    }
}

impl From<FiniteSet> for Vec<u32> {
    fn from(s: FiniteSet) -> Vec<u32> {
        s.0
    }
}

impl fmt::Debug for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Result of peeling the unique A_xi initial segment off a set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PeelResult {
    Complete { prefix: FiniteSet, rest: FiniteSet },
    /// The whole input is a proper initial segment of some A_xi element.
    Partial,
}

/// Canonical representation: consecutive A_xi pieces plus a partial tail.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Decomposition {
    pub pieces: Vec<FiniteSet>,
    pub tail: FiniteSet,
}

/// Length of the unique initial segment of `s` lying in A_xi, or `None` when
/// `s` is a proper initial segment of an A_xi element.
fn peel_len(s: &[u32], xi: &Ordinal) -> Option<usize> {
    match xi.classify() {
        OrdinalClass::Zero => Some(0),
        OrdinalClass::Successor(zeta) => {
            if s.is_empty() {
                None
            } else {
                peel_len(&s[1..], &zeta).map(|l| l + 1)
            }
        }
        OrdinalClass::PowerSuccExp(beta) => {
            let n = *s.first()?;
            peel_pieces(s, &Ordinal::omega_pow(&beta), n as usize)
        }
        OrdinalClass::PowerLimitExp(lambda) => {
            let n = *s.first()?;
            let rung = lambda.ladder(n as u64).expect("ladder of a limit");
            peel_len(s, &Ordinal::omega_pow(&rung))
        }
        OrdinalClass::CompositeLimit { p, a, parts } => {
            let mut consumed = 0;
            for (pi, ai) in parts.iter().rev() {
                let l = peel_pieces(&s[consumed..], &Ordinal::omega_pow(ai), *pi as usize)?;
                consumed += l;
            }
            let l = peel_pieces(&s[consumed..], &Ordinal::omega_pow(&a), p as usize)?;
            Some(consumed + l)
        }
    }
}

/// Peel `k` consecutive A_xi pieces; total length consumed, or `None`.
fn peel_pieces(s: &[u32], xi: &Ordinal, k: usize) -> Option<usize> {
    let mut consumed = 0;
    for _ in 0..k {
        let l = peel_len(&s[consumed..], xi)?;
        consumed += l;
    }
    Some(consumed)
}

/// Membership in A_xi per the five recursive clauses.
pub fn member_a(s: &FiniteSet, xi: &Ordinal) -> bool {
    peel_len(s.elements(), xi) == Some(s.len())
}

/// The unique complete A_xi initial segment, if one exists.
pub fn peel_a(s: &FiniteSet, xi: &Ordinal) -> PeelResult {
    assert!(!xi.is_zero(), "peel requires xi >= 1");
    match peel_len(s.elements(), xi) {
        Some(l) => {
            debug_assert!(l <= s.len());
            PeelResult::Complete {
                prefix: FiniteSet(s.elements()[..l].to_vec()),
                rest: FiniteSet(s.elements()[l..].to_vec()),
            }
        }
        None => PeelResult::Partial,
    }
}

/// Repeated peeling: every complete piece, then the partial tail.
pub fn decompose_a(s: &FiniteSet, xi: &Ordinal) -> Decomposition {
    assert!(!xi.is_zero(), "decompose requires xi >= 1");
    let mut pieces = Vec::new();
    let mut rest = s.clone();
    loop {
        match peel_a(&rest, xi) {
            PeelResult::Complete { prefix, rest: r } => {
                pieces.push(prefix);
                rest = r;
            }
            PeelResult::Partial => {
                return Decomposition { pieces, tail: rest };
            }
        }
    }
}

/// First `k` canonical pieces of an infinite set presented as a stream.
///
/// Reads only as many elements as the pieces need: a buffered prefix peels
/// completely as soon as the piece is determined, and more input never
/// changes a completed peel (thinness).
pub fn decompose_stream_a(
    source: &mut dyn Iterator<Item = u32>,
    xi: &Ordinal,
    k: usize,
) -> Result<Vec<FiniteSet>> {
    assert!(!xi.is_zero(), "decompose requires xi >= 1");
    assert!(k >= 1);
    let mut pieces = Vec::new();
    let mut buf: Vec<u32> = Vec::new();
    let mut read = 0usize;
    let mut last: Option<u32> = None;
    while pieces.len() < k {
        match peel_len(&buf, xi) {
            Some(l) => {
                let rest = buf.split_off(l);
                pieces.push(FiniteSet(buf));
                buf = rest;
            }
            None => match source.next() {
                Some(e) => {
                    if last.is_some_and(|p| p >= e) || e == 0 {
                        return Err(Error::InvalidSet(format!(
                            "stream not strictly increasing at element {e}"
                        )));
                    }
                    last = Some(e);
                    read += 1;
                    buf.push(e);
                }
                None => {
                    return Err(Error::StreamExhausted {
                        read,
                        pieces: k - pieces.len(),
                    });
                }
            },
        }
    }
    Ok(pieces)
}

/// All members of A_xi within `{1..bound}` in lexicographic order, truncated
/// at `limit`. Returns the list and whether it was truncated.
///
/// DFS over element sequences; a branch dies once its buffer has a complete
/// initial segment (thinness: no extension is a member either).
pub fn enumerate_a(xi: &Ordinal, bound: u32, limit: usize) -> (Vec<FiniteSet>, bool) {
    assert!(bound >= 1);
    let mut out = Vec::new();
    let mut truncated = false;
    if xi.is_zero() {
        if limit == 0 {
            return (out, true);
        }
        out.push(FiniteSet::empty());
        return (out, false);
    }
    let mut stack: Vec<u32> = Vec::new();
    dfs_a(xi, bound, limit, &mut stack, &mut out, &mut truncated);
    (out, truncated)
}

fn dfs_a(
    xi: &Ordinal,
    bound: u32,
    limit: usize,
    stack: &mut Vec<u32>,
    out: &mut Vec<FiniteSet>,
    truncated: &mut bool,
) {
    if *truncated {
        return;
    }
    let next_from = stack.last().map_or(1, |&e| e + 1);
    for e in next_from..=bound {
        if *truncated {
            return;
        }
        stack.push(e);
        match peel_len(stack, xi) {
            Some(l) if l == stack.len() => {
                if out.len() == limit {
                    *truncated = true;
                } else {
                    out.push(FiniteSet(stack.clone()));
                }
            }
            Some(_) => {}
            None => dfs_a(xi, bound, limit, stack, out, truncated),
        }
        stack.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinal::parse_ordinal;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn ord(s: &str) -> Ordinal {
        parse_ordinal(s).unwrap()
    }

    fn fs(v: &[u32]) -> FiniteSet {
        FiniteSet::new(v.to_vec()).unwrap()
    }

    fn corpus() -> Vec<Ordinal> {
        ["1", "2", "3", "w", "w+1", "w*2", "w^2", "w^2+w*2+1", "w^w"]
            .iter()
            .map(|s| ord(s))
            .collect()
    }

    #[test]
    fn finite_set_validation() {
        assert!(FiniteSet::new(vec![1, 2, 5]).is_ok());
        assert!(FiniteSet::new(vec![2, 2]).is_err());
        assert!(FiniteSet::new(vec![3, 1]).is_err());
        assert!(FiniteSet::new(vec![0, 1]).is_err());
        assert!(FiniteSet::new(vec![]).is_ok());
    }

    #[test]
    fn member_examples() {
        assert!(member_a(&fs(&[4]), &ord("1")));
        assert!(!member_a(&fs(&[3, 5]), &ord("w")));
        assert!(member_a(&fs(&[3, 7, 10]), &ord("w")));
        assert!(member_a(&fs(&[2, 3, 4, 5, 6, 7]), &ord("w^2")));
        assert!(member_a(&FiniteSet::empty(), &ord("0")));
        assert!(!member_a(&fs(&[1]), &ord("0")));
        assert!(!member_a(&FiniteSet::empty(), &ord("1")));
    }

    #[test]
    fn peel_examples() {
        assert_eq!(
            peel_a(&fs(&[2, 3, 4, 9]), &ord("2")),
            PeelResult::Complete {
                prefix: fs(&[2, 3]),
                rest: fs(&[4, 9]),
            }
        );
        assert_eq!(peel_a(&fs(&[5]), &ord("w")), PeelResult::Partial);
        assert_eq!(peel_a(&FiniteSet::empty(), &ord("1")), PeelResult::Partial);
    }

    #[test]
    fn decompose_examples() {
        let d = decompose_a(&fs(&[1, 2, 3]), &ord("1"));
        assert_eq!(d.pieces, vec![fs(&[1]), fs(&[2]), fs(&[3])]);
        assert!(d.tail.is_empty());

        let d = decompose_a(&fs(&[2, 3, 4, 5, 6]), &ord("w"));
        assert_eq!(d.pieces, vec![fs(&[2, 3])]);
        assert_eq!(d.tail, fs(&[4, 5, 6]));

        let d = decompose_a(&fs(&[3, 4, 5]), &ord("w"));
        assert_eq!(d.pieces, vec![fs(&[3, 4, 5])]);
        assert!(d.tail.is_empty());
    }

    #[test]
    fn decompose_zero_pieces() {
        let d = decompose_a(&fs(&[5, 9]), &ord("w"));
        assert!(d.pieces.is_empty());
        assert_eq!(d.tail, fs(&[5, 9]));
    }

    #[test]
    fn stream_examples() {
        let mut s = 1u32..;
        assert_eq!(
            decompose_stream_a(&mut s, &ord("w"), 2).unwrap(),
            vec![fs(&[1]), fs(&[2, 3])]
        );
        let mut s = (1u32..).map(|i| 2 * i);
        assert_eq!(
            decompose_stream_a(&mut s, &ord("1"), 3).unwrap(),
            vec![fs(&[2]), fs(&[4]), fs(&[6])]
        );
        let mut s = 3u32..;
        assert_eq!(
            decompose_stream_a(&mut s, &ord("w"), 2).unwrap(),
            vec![fs(&[3, 4, 5]), fs(&[6, 7, 8, 9, 10, 11])]
        );
    }

    #[test]
    fn stream_exhaustion() {
        let mut s = vec![3u32, 4].into_iter();
        match decompose_stream_a(&mut s, &ord("w"), 1) {
            Err(Error::StreamExhausted { read: 2, pieces: 1 }) => {}
            other => panic!("expected exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(
            enumerate_a(&ord("1"), 3, 1000).0,
            vec![fs(&[1]), fs(&[2]), fs(&[3])]
        );
        assert_eq!(
            enumerate_a(&ord("2"), 3, 1000).0,
            vec![fs(&[1, 2]), fs(&[1, 3]), fs(&[2, 3])]
        );
        assert_eq!(
            enumerate_a(&ord("w"), 4, 1000).0,
            vec![fs(&[1]), fs(&[2, 3]), fs(&[2, 4])]
        );
        let (v, truncated) = enumerate_a(&ord("1"), 5, 2);
        assert_eq!(v.len(), 2);
        assert!(truncated);
    }

    #[test]
    fn enumerate_agrees_with_member() {
        for xi in corpus() {
            let listed = enumerate_a(&xi, 9, 100_000).0;
            let mut brute = Vec::new();
            for mask in 1u32..(1 << 9) {
                let s = FiniteSet((1..=9).filter(|&e| mask >> (e - 1) & 1 == 1).collect());
                if member_a(&s, &xi) {
                    brute.push(s);
                }
            }
            brute.sort();
            let mut sorted = listed.clone();
            sorted.sort();
            assert_eq!(sorted, brute, "enumerate vs member at xi={xi}");
            // lexicographic order is sorted order on element sequences
            assert_eq!(listed, sorted, "enumerate order at xi={xi}");
        }
    }

    #[test]
    fn thinness_on_corpus() {
        for xi in corpus() {
            let members = enumerate_a(&xi, 10, 100_000).0;
            for (i, s) in members.iter().enumerate() {
                for (j, t) in members.iter().enumerate() {
                    if i != j {
                        assert!(
                            !s.is_initial_segment_of(t),
                            "thinness fails at xi={xi}: {s:?} before {t:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn decomposition_soundness_random() {
        let mut rng = StdRng::seed_from_u64(21);
        for xi in corpus() {
            for _ in 0..300 {
                let s = FiniteSet((1..=14).filter(|_| rng.gen_bool(0.5)).collect());
                let d = decompose_a(&s, &xi);
                let mut rebuilt = Vec::new();
                for p in &d.pieces {
                    assert!(member_a(p, &xi), "piece {p:?} not in A_{xi}");
                    rebuilt.extend_from_slice(p.elements());
                }
                rebuilt.extend_from_slice(d.tail.elements());
                assert_eq!(rebuilt, s.elements());
                assert!(!member_a(&d.tail, &xi), "tail {:?} complete", d.tail);
                assert_eq!(peel_a(&d.tail, &xi), PeelResult::Partial);
            }
        }
    }

    #[test]
    fn successor_law() {
        for xi in corpus() {
            if !xi.is_successor() {
                continue;
            }
            let zeta = xi.pred().unwrap();
            for mask in 0u32..(1 << 8) {
                let s = FiniteSet((1..=8).filter(|&e| mask >> (e - 1) & 1 == 1).collect());
                let lhs = member_a(&s, &xi);
                let rhs = !s.is_empty()
                    && member_a(&FiniteSet(s.elements()[1..].to_vec()), &zeta);
                assert_eq!(lhs, rhs, "successor law fails at xi={xi}, s={s:?}");
            }
        }
    }

    #[test]
    fn limit_power_matches_ladder_instance() {
        let xi = ord("w^w");
        for mask in 1u32..(1 << 8) {
            let s = FiniteSet((1..=8).filter(|&e| mask >> (e - 1) & 1 == 1).collect());
            let n = s.min_elem().unwrap() as u64;
            let inst = Ordinal::omega_pow(&ord("w").ladder(n).unwrap());
            assert_eq!(member_a(&s, &xi), member_a(&s, &inst));
        }
    }
}
