//! Cantor-normal-form ordinals below epsilon-0, their classification into the
//! five recursion cases, and the fixed ladder (fundamental-sequence) system.
//!
//! An ordinal is a strictly-decreasing list of `(exponent, coefficient)` terms,
//! `w^e1*c1 + w^e2*c2 + ...`; the empty list is 0 and naturals are carried as
//! `w^0` coefficients. The derived `Ord` (lexicographic on terms, with shorter
//! prefixes smaller) coincides with ordinal order on this representation.

use std::fmt;

use crate::error::{Error, Result};

/// Default cap on the nesting depth of exponents.
pub const DEFAULT_DEPTH_CAP: usize = 8;

/// String tag describing the fixed ladder rule; embedded in CLI output so
/// results can be tied to the fundamental-sequence choice they depend on.
pub const LADDER_RULE: &str = "drop-least-term,+1";

/// A countable ordinal below epsilon-0 in Cantor normal form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ordinal {
    /// `(exponent, coefficient)` with exponents strictly decreasing, coefficients >= 1.
    terms: Vec<(Ordinal, u64)>,
}

/// Which clause of the recursive family definition governs an ordinal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum OrdinalClass {
    Zero,
    /// `xi = zeta + 1`; payload is `zeta`.
    Successor(Ordinal),
    /// `xi = w^(beta+1)`; payload is `beta`.
    PowerSuccExp(Ordinal),
    /// `xi = w^lambda` with `lambda` a nonzero limit; payload is `lambda`.
    PowerLimitExp(Ordinal),
    /// A limit `xi` with `w^a < xi < w^(a+1)`:
    /// `xi = p*w^a + sum p_i*w^(a_i)` with `a > a_1 > ... > a_m > 0`.
    CompositeLimit {
        p: u64,
        a: Ordinal,
        parts: Vec<(u64, Ordinal)>,
    },
}

/// `(p, a, [(p_i, a_i)])` as in the composite-limit case.
pub type CompositeParts = (u64, Ordinal, Vec<(u64, Ordinal)>);

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn nat(n: u64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            Ordinal {
                terms: vec![(Self::zero(), n)],
            }
        }
    }

    pub fn omega() -> Self {
        Ordinal {
            terms: vec![(Self::nat(1), 1)],
        }
    }

    /// `w^e` (so `w^0 = 1`).
    pub fn omega_pow(e: &Ordinal) -> Self {
        Ordinal {
            terms: vec![(e.clone(), 1)],
        }
    }

    pub fn terms(&self) -> &[(Ordinal, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(n)` iff this ordinal is the natural number `n`.
    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, c)] if e.is_zero() => Some(*c),
            _ => None,
        }
    }

    pub fn is_successor(&self) -> bool {
        matches!(self.terms.last(), Some((e, _)) if e.is_zero())
    }

    pub fn is_limit(&self) -> bool {
        !self.is_zero() && !self.is_successor()
    }

    /// `self + 1`.
    pub fn succ(&self) -> Self {
        self.add(&Self::nat(1))
    }

    /// Predecessor of a successor ordinal.
    pub fn pred(&self) -> Result<Self> {
        if !self.is_successor() {
            return Err(Error::WrongClass {
                expected: "successor",
                got: self.to_string(),
            });
        }
        let mut terms = self.terms.clone();
        let last = terms.last_mut().unwrap();
        if last.1 > 1 {
            last.1 -= 1;
        } else {
            terms.pop();
        }
        Ok(Ordinal { terms })
    }

    /// Left-to-right ordinal addition in CNF.
    pub fn add(&self, rhs: &Ordinal) -> Self {
        if rhs.is_zero() {
            return self.clone();
        }
        let lead = &rhs.terms[0].0;
        let mut terms: Vec<(Ordinal, u64)> = self
            .terms
            .iter()
            .filter(|(e, _)| e > lead)
            .cloned()
            .collect();
        let mut rest = rhs.terms.clone();
        if let Some((e, c)) = self.terms.iter().find(|(e, _)| e == lead) {
            debug_assert_eq!(e, lead);
            let _ = e;
            rest[0].1 += c;
        }
        terms.extend(rest);
        Ordinal { terms }
    }

    /// Nesting depth of exponents: 0 for 0, 1 for naturals, 2 for `w`, ...
    pub fn exp_depth(&self) -> usize {
        self.terms
            .iter()
            .map(|(e, _)| 1 + e.exp_depth())
            .max()
            .unwrap_or(0)
    }

    pub fn check_depth(&self, cap: usize) -> Result<()> {
        let depth = self.exp_depth();
        if depth > cap {
            Err(Error::DepthCap { depth, cap })
        } else {
            Ok(())
        }
    }

    /// The unique clause of the family recursion that applies.
    pub fn classify(&self) -> OrdinalClass {
        if self.is_zero() {
            return OrdinalClass::Zero;
        }
        if self.is_successor() {
            return OrdinalClass::Successor(self.pred().unwrap());
        }
        // Limit ordinal: every exponent is >= 1.
        if self.terms.len() == 1 && self.terms[0].1 == 1 {
            let e = &self.terms[0].0;
            if e.is_successor() {
                return OrdinalClass::PowerSuccExp(e.pred().unwrap());
            }
            return OrdinalClass::PowerLimitExp(e.clone());
        }
        let (a, p) = self.terms[0].clone();
        let parts = self.terms[1..]
            .iter()
            .map(|(e, c)| (*c, e.clone()))
            .collect();
        OrdinalClass::CompositeLimit { p, a, parts }
    }

    /// The case-(5) decomposition `(p, a, [(p_i, a_i)])`.
    pub fn case5_decompose(&self) -> Result<CompositeParts> {
        match self.classify() {
            OrdinalClass::CompositeLimit { p, a, parts } => Ok((p, a, parts)),
            other => Err(Error::WrongClass {
                expected: "composite limit",
                got: format!("{other:?}"),
            }),
        }
    }

    /// The fixed ladder: `ladder(lambda, n)` is a successor ordinal below
    /// `lambda`, strictly increasing in `n` with supremum `lambda`.
    ///
    /// Rule: write `lambda = head + w^{a_k}` (one copy of the least term
    /// dropped). If `a_k = gamma + 1`, the value is `head + w^gamma * n + 1`;
    /// if `a_k` is a limit, it is `head + w^{ladder(a_k, n)} + 1`.
    pub fn ladder(&self, n: u64) -> Result<Ordinal> {
        if !self.is_limit() {
            return Err(Error::WrongClass {
                expected: "nonzero limit",
                got: self.to_string(),
            });
        }
        assert!(n >= 1, "ladder index must be positive");
        let (a_k, c_k) = self.terms.last().unwrap().clone();
        let mut head = self.terms.clone();
        if c_k > 1 {
            head.last_mut().unwrap().1 -= 1;
        } else {
            head.pop();
        }
        let mut terms = head;
        if a_k.is_successor() {
            let gamma = a_k.pred()?;
            if gamma.is_zero() {
                terms.push((Ordinal::zero(), n + 1));
            } else {
                terms.push((gamma, n));
                terms.push((Ordinal::zero(), 1));
            }
        } else {
            // a_k is a limit (it is nonzero because `self` is a limit).
            terms.push((a_k.ladder(n)?, 1));
            terms.push((Ordinal::zero(), 1));
        }
        Ok(Ordinal { terms })
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
                continue;
            }
            if let Some(k) = e.as_nat() {
                if k == 1 {
                    write!(f, "w")?;
                } else {
                    write!(f, "w^{k}")?;
                }
            } else if *e == Ordinal::omega() {
                write!(f, "w^w")?;
            } else {
                write!(f, "w^({e})")?;
            }
            if *c > 1 {
                write!(f, "*{c}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Canonical spelling of an ordinal (round-trips through [`parse_ordinal`]).
pub fn format_ordinal(x: &Ordinal) -> String {
    x.to_string()
}

/// Parse an ordinal expression:
/// `ord := term ("+" term)* ; term := "w" ["^" atom] ["*" nat] | nat ;
/// atom := nat | "w" | "(" ord ")"`.
///
/// Out-of-order or repeated exponents are normalized by left-to-right
/// ordinal addition.
pub fn parse_ordinal(text: &str) -> Result<Ordinal> {
    parse_ordinal_capped(text, DEFAULT_DEPTH_CAP)
}

pub fn parse_ordinal_capped(text: &str, depth_cap: usize) -> Result<Ordinal> {
    let mut p = Parser {
        chars: text.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    let ord = p.parse_ord()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(Error::Parse {
            pos: p.pos,
            msg: format!("unexpected character '{}'", p.chars[p.pos] as char),
        });
    }
    ord.check_depth(depth_cap)?;
    Ok(ord)
}

struct Parser<'a> {
    chars: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Parse {
                pos: self.pos,
                msg: format!("expected '{}'", b as char),
            })
        }
    }

    fn parse_ord(&mut self) -> Result<Ordinal> {
        let mut acc = self.parse_term()?;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'+') {
                self.pos += 1;
                self.skip_ws();
                let t = self.parse_term()?;
                acc = acc.add(&t);
            } else {
                return Ok(acc);
            }
        }
    }

    fn parse_term(&mut self) -> Result<Ordinal> {
        self.skip_ws();
        match self.peek() {
            Some(b'w') => {
                self.pos += 1;
                let mut exp = Ordinal::nat(1);
                let mut coeff = 1u64;
                self.skip_ws();
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.skip_ws();
                    exp = self.parse_atom()?;
                }
                self.skip_ws();
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    self.skip_ws();
                    coeff = self.parse_nat()?;
                }
                if coeff == 0 {
                    return Ok(Ordinal::zero());
                }
                Ok(Ordinal {
                    terms: vec![(exp, coeff)],
                })
            }
            Some(c) if c.is_ascii_digit() => Ok(Ordinal::nat(self.parse_nat()?)),
            _ => Err(Error::Parse {
                pos: self.pos,
                msg: "expected 'w' or a natural number".into(),
            }),
        }
    }

    fn parse_atom(&mut self) -> Result<Ordinal> {
        match self.peek() {
            Some(b'w') => {
                self.pos += 1;
                Ok(Ordinal::omega())
            }
            Some(b'(') => {
                self.pos += 1;
                let ord = self.parse_ord()?;
                self.skip_ws();
                self.expect(b')')?;
                Ok(ord)
            }
            Some(c) if c.is_ascii_digit() => Ok(Ordinal::nat(self.parse_nat()?)),
            _ => Err(Error::Parse {
                pos: self.pos,
                msg: "expected a natural number, 'w', or '('".into(),
            }),
        }
    }

    fn parse_nat(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::Parse {
                pos: self.pos,
                msg: "expected digits".into(),
            });
        }
        std::str::from_utf8(&self.chars[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse {
                pos: start,
                msg: "number too large".into(),
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn ord(s: &str) -> Ordinal {
        parse_ordinal(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert!(ord("0").is_zero());
        let x = ord("w^2*2+w*3+5");
        assert_eq!(
            x.terms(),
            &[
                (Ordinal::nat(2), 2),
                (Ordinal::nat(1), 3),
                (Ordinal::zero(), 5)
            ]
        );
        let y = ord("w^(w^2*3+1)*2");
        assert_eq!(y.terms().len(), 1);
        assert_eq!(y.terms()[0].1, 2);
        assert_eq!(y.terms()[0].0, ord("w^2*3+1"));
    }

    #[test]
    fn parse_normalizes_unordered_terms() {
        assert_eq!(ord("5+w"), ord("w"));
        assert_eq!(ord("w+w"), ord("w*2"));
        assert_eq!(ord("w+1+w^2"), ord("w^2"));
        assert_eq!(ord("w*2+w*3"), ord("w*5"));
    }

    #[test]
    fn parse_errors_carry_position() {
        match parse_ordinal("w^") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_ordinal("w^2)").is_err());
        assert!(parse_ordinal("").is_err());
    }

    #[test]
    fn depth_cap_enforced() {
        // depths: 0 -> 0, naturals -> 1, w -> 2, w^w -> 3, ...
        assert_eq!(parse_ordinal("w^w").unwrap().exp_depth(), 3);
        assert!(parse_ordinal_capped("w^(w^(w^w))", 4).is_err());
        assert!(parse_ordinal_capped("w^(w^(w^w))", 5).is_ok());
    }

    #[test]
    fn format_examples() {
        assert_eq!(format_ordinal(&Ordinal::zero()), "0");
        assert_eq!(format_ordinal(&Ordinal::omega()), "w");
        assert_eq!(format_ordinal(&ord("w^2*2+5")), "w^2*2+5");
        assert_eq!(format_ordinal(&ord("w^w")), "w^w");
        assert_eq!(format_ordinal(&ord("w^(w^2)")), "w^(w^2)");
    }

    #[test]
    fn compare_examples() {
        assert!(ord("w") > ord("5"));
        assert_eq!(ord("w^2+1"), ord("w^2+1"));
        assert!(ord("w*3") < ord("w^2"));
        assert!(ord("w^2") < ord("w^2+1"));
        assert!(ord("w^2+1") < ord("w^2+w"));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(ord("0").classify(), OrdinalClass::Zero);
        assert_eq!(ord("5").classify(), OrdinalClass::Successor(ord("4")));
        assert_eq!(ord("w").classify(), OrdinalClass::PowerSuccExp(ord("0")));
        assert_eq!(ord("w^2").classify(), OrdinalClass::PowerSuccExp(ord("1")));
        assert_eq!(ord("w^w").classify(), OrdinalClass::PowerLimitExp(ord("w")));
        assert_eq!(
            ord("w^2*2+w*3").classify(),
            OrdinalClass::CompositeLimit {
                p: 2,
                a: ord("2"),
                parts: vec![(3, ord("1"))],
            }
        );
    }

    #[test]
    fn case5_examples() {
        assert_eq!(ord("w*2").case5_decompose().unwrap(), (2, ord("1"), vec![]));
        assert_eq!(
            ord("w^2+w").case5_decompose().unwrap(),
            (1, ord("2"), vec![(1, ord("1"))])
        );
        assert_eq!(
            ord("w^3*4+w^2*2+w").case5_decompose().unwrap(),
            (4, ord("3"), vec![(2, ord("2")), (1, ord("1"))])
        );
        assert!(ord("w").case5_decompose().is_err());
    }

    #[test]
    fn ladder_examples() {
        assert_eq!(ord("w").ladder(3).unwrap(), ord("4"));
        assert_eq!(ord("w^2").ladder(2).unwrap(), ord("w*2+1"));
        assert_eq!(ord("w^w").ladder(2).unwrap(), ord("w^3+1"));
        assert_eq!(ord("w*2").ladder(4).unwrap(), ord("w+5"));
        assert!(ord("w+1").ladder(1).is_err());
        assert!(ord("0").ladder(1).is_err());
    }

    #[test]
    fn ladder_monotone_below_limit() {
        let corpus = ["w", "w*2", "w^2", "w^2+w*3", "w^w", "w^(w*2)", "w^w*2+w^2"];
        for s in corpus {
            let lam = ord(s);
            let mut prev: Option<Ordinal> = None;
            for n in 1..=32 {
                let v = lam.ladder(n).unwrap();
                assert!(v < lam, "ladder({s},{n}) = {v} not below {s}");
                assert!(v.is_successor(), "ladder({s},{n}) = {v} not a successor");
                if let Some(p) = &prev {
                    assert!(*p < v, "ladder({s}) not strictly increasing at n={n}");
                }
                prev = Some(v);
            }
        }
    }

    pub(crate) fn random_ordinal(rng: &mut StdRng, depth: usize) -> Ordinal {
        if depth == 0 || rng.gen_bool(0.3) {
            return Ordinal::nat(rng.gen_range(0..6));
        }
        let nterms = rng.gen_range(0..=3);
        let mut exps: Vec<Ordinal> = (0..nterms)
            .map(|_| random_ordinal(rng, depth - 1))
            .collect();
        exps.sort();
        exps.dedup();
        exps.reverse();
        let terms = exps
            .into_iter()
            .map(|e| (e, rng.gen_range(1..5)))
            .collect();
        Ordinal { terms }
    }

    #[test]
    fn compare_is_total_order() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..10_000 {
            let a = random_ordinal(&mut rng, 3);
            let b = random_ordinal(&mut rng, 3);
            let c = random_ordinal(&mut rng, 3);
            // antisymmetry
            if a <= b && b <= a {
                assert_eq!(a, b);
            }
            // transitivity
            let (mut x, mut y, mut z) = (a.clone(), b.clone(), c.clone());
            if x > y {
                std::mem::swap(&mut x, &mut y);
            }
            if y > z {
                std::mem::swap(&mut y, &mut z);
            }
            if x > y {
                std::mem::swap(&mut x, &mut y);
            }
            assert!(x <= y && y <= z && x <= z);
        }
    }

    #[test]
    fn classify_is_a_partition_and_reconstructs() {
        let mut rng = StdRng::seed_from_u64(12);
        for _ in 0..10_000 {
            let x = random_ordinal(&mut rng, 3);
            let rebuilt = match x.classify() {
                OrdinalClass::Zero => Ordinal::zero(),
                OrdinalClass::Successor(p) => p.succ(),
                OrdinalClass::PowerSuccExp(b) => Ordinal::omega_pow(&b.succ()),
                OrdinalClass::PowerLimitExp(l) => {
                    assert!(l.is_limit());
                    Ordinal::omega_pow(&l)
                }
                OrdinalClass::CompositeLimit { p, a, parts } => {
                    assert!(p > 1 || !parts.is_empty());
                    let mut acc = Ordinal {
                        terms: vec![(a, p)],
                    };
                    for (pi, ai) in parts {
                        assert!(!ai.is_zero());
                        acc = acc.add(&Ordinal { terms: vec![(ai, pi)] });
                    }
                    acc
                }
            };
            assert_eq!(rebuilt, x, "classify payload does not reconstruct {x}");
        }
    }

    #[test]
    fn roundtrip_random() {
        let mut rng = StdRng::seed_from_u64(13);
        for _ in 0..2_000 {
            let x = random_ordinal(&mut rng, 3);
            let s = format_ordinal(&x);
            assert_eq!(ord(&s), x, "roundtrip failed for {s}");
        }
    }
}
