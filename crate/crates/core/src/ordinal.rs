//! Ordinals below epsilon-zero in Cantor normal form.
//!
//! An ordinal is a finite sum `w^e1*c1 + w^e2*c2 + ...` with strictly
//! decreasing exponents (themselves ordinals) and positive coefficients.
//! Only the operations that end-space ranks need are provided: comparison,
//! successor, supremum of finitely many values, and the limit/successor
//! split.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Deepest exponent nesting accepted by the parser (`w^{w^{w^{w}}}` is depth 4).
pub const MAX_EXPONENT_DEPTH: usize = 4;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    // (exponent, coefficient), highest exponent first
    terms: Vec<(Ordinal, u64)>,
}

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
        Self::omega_pow(Self::nat(1))
    }

    /// `w^e`.
    pub fn omega_pow(e: Ordinal) -> Self {
        Ordinal { terms: vec![(e, 1)] }
    }

    /// Builds an ordinal from CNF terms, validating the invariants.
    pub fn from_terms(terms: Vec<(Ordinal, u64)>) -> Result<Self, Error> {
        for w in terms.windows(2) {
            if w[0].0 <= w[1].0 {
                return Err(Error::Ordinal("exponents must be strictly decreasing".into()));
            }
        }
        if terms.iter().any(|(_, c)| *c == 0) {
            return Err(Error::Ordinal("coefficients must be positive".into()));
        }
        Ok(Ordinal { terms })
    }

    pub fn terms(&self) -> &[(Ordinal, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value as a natural number, if finite.
    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, c)] if e.is_zero() => Some(*c),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_nat().is_some()
    }

    pub fn is_successor(&self) -> bool {
        matches!(self.terms.last(), Some((e, _)) if e.is_zero())
    }

    pub fn is_limit(&self) -> bool {
        !self.is_zero() && !self.is_successor()
    }

    pub fn succ(&self) -> Ordinal {
        let mut terms = self.terms.clone();
        match terms.last_mut() {
            Some((e, c)) if e.is_zero() => *c += 1,
            _ => terms.push((Self::zero(), 1)),
        }
        Ordinal { terms }
    }

    pub fn predecessor(&self) -> Result<Ordinal, Error> {
        if !self.is_successor() {
            return Err(Error::Ordinal(format!("{self} is not a successor")));
        }
        let mut terms = self.terms.clone();
        let last = terms.last_mut().expect("successor has a finite term");
        if last.1 == 1 {
            terms.pop();
        } else {
            last.1 -= 1;
        }
        Ok(Ordinal { terms })
    }

    /// Supremum of a finite list; the empty supremum is 0.
    pub fn sup<'a, I>(xs: I) -> Ordinal
    where
        I: IntoIterator<Item = &'a Ordinal>,
    {
        xs.into_iter().max().cloned().unwrap_or_default()
    }

    /// `self + n` for a natural number `n`.
    pub fn plus_nat(&self, n: u64) -> Ordinal {
        if n == 0 {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        match terms.last_mut() {
            Some((e, c)) if e.is_zero() => *c += n,
            _ => terms.push((Self::zero(), n)),
        }
        Ordinal { terms }
    }

    /// `self + w`: the finite tail is absorbed and the `w^1` coefficient grows.
    pub fn plus_omega(&self) -> Ordinal {
        let one = Self::nat(1);
        let mut terms: Vec<_> = self.terms.iter().filter(|(e, _)| !e.is_zero()).cloned().collect();
        match terms.last_mut() {
            Some((e, c)) if *e == one => *c += 1,
            _ => terms.push((one, 1)),
        }
        Ordinal { terms }
    }

    fn exponent_depth(&self) -> usize {
        self.terms
            .iter()
            .map(|(e, _)| if e.is_zero() { 0 } else { 1 + e.exponent_depth() })
            .max()
            .unwrap_or(0)
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            match a.0.cmp(&b.0).then(a.1.cmp(&b.1)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::nat(n)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
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
            match e.as_nat() {
                Some(1) => write!(f, "w")?,
                Some(n) => write!(f, "w^{n}")?,
                None => write!(f, "w^{{{e}}}")?,
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
        write!(f, "Ordinal({self})")
    }
}

impl FromStr for Ordinal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = OrdParser {
            src: s.as_bytes(),
            pos: 0,
        };
        let o = p.sum()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("trailing input"));
        }
        if o.exponent_depth() > MAX_EXPONENT_DEPTH {
            return Err(Error::Ordinal(format!(
                "exponent nesting deeper than {MAX_EXPONENT_DEPTH} is not supported"
            )));
        }
        Ok(o)
    }
}

struct OrdParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl OrdParser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Ordinal(format!("{msg} at position {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn nat(&mut self) -> Result<u64, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("digits are ascii")
            .parse()
            .map_err(|_| self.err("number out of range"))
    }

    fn sum(&mut self) -> Result<Ordinal, Error> {
        let mut terms: Vec<(Ordinal, u64)> = Vec::new();
        loop {
            let (e, c) = self.term()?;
            if c > 0 {
                match terms.last_mut() {
                    Some(last) if last.0 == e => last.1 += c,
                    _ => terms.push((e, c)),
                }
            }
            if self.peek() == Some(b'+') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ordinal::from_terms(terms).map_err(|_| self.err("terms must be in decreasing order"))
    }

    fn term(&mut self) -> Result<(Ordinal, u64), Error> {
        match self.peek() {
            Some(b'w') => {
                self.pos += 1;
                let exp = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    if self.peek() == Some(b'{') {
                        self.pos += 1;
                        let e = self.sum()?;
                        if self.peek() != Some(b'}') {
                            return Err(self.err("expected '}'"));
                        }
                        self.pos += 1;
                        e
                    } else {
                        Ordinal::nat(self.nat()?)
                    }
                } else {
                    Ordinal::nat(1)
                };
                let coeff = if self.peek() == Some(b'*') {
                    self.pos += 1;
                    self.nat()?
                } else {
                    1
                };
                Ok((exp, coeff))
            }
            Some(c) if c.is_ascii_digit() => Ok((Ordinal::zero(), self.nat()?)),
            _ => Err(self.err("expected 'w' or a number")),
        }
    }
}
