//! Paths labelled by a finite poset: periods, twin counts and explicit twins.
//!
//! An embedding of labelled paths is a path embedding `f` with
//! `label(n) <= label'(f(n))`. On a one-way path these are the forward
//! shifts; on a two-way path the translations and reflections.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::stability::TwinCard;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
    antichain_syntax: bool,
}

impl Poset {
    /// The order generated by `relations` (pairs `a < b`).
    pub fn new(names: Vec<String>, relations: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in relations {
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..i {
                if leq[i][j] && leq[j][i] {
                    return Err(Error::Precondition(format!(
                        "{} and {} are below each other",
                        names[i], names[j]
                    )));
                }
            }
        }
        Ok(Poset {
            names,
            leq,
            antichain_syntax: false,
        })
    }

    pub fn antichain(names: Vec<String>) -> Self {
        let mut p = Poset::new(names, &[]).expect("no relations");
        p.antichain_syntax = true;
        p
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }

    pub fn least(&self) -> Option<usize> {
        (0..self.len()).find(|&i| (0..self.len()).all(|j| self.leq[i][j]))
    }

    pub fn is_antichain(&self) -> bool {
        (0..self.len()).all(|i| (0..self.len()).all(|j| i == j || !self.leq[i][j]))
    }
}

impl fmt::Display for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.antichain_syntax || self.is_antichain() {
            return write!(f, "antichain{{{}}}", self.names.join(","));
        }
        let mut parts = Vec::new();
        let mut mentioned = vec![false; self.len()];
        // covering pairs only
        for a in 0..self.len() {
            for b in 0..self.len() {
                let covers = self.lt(a, b)
                    && !(0..self.len()).any(|c| c != a && c != b && self.lt(a, c) && self.lt(c, b));
                if covers {
                    parts.push(format!("{}<{}", self.names[a], self.names[b]));
                    mentioned[a] = true;
                    mentioned[b] = true;
                }
            }
        }
        for (i, m) in mentioned.iter().enumerate() {
            if !m {
                parts.push(self.names[i].clone());
            }
        }
        write!(f, "poset{{{}}}", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    /// Labels `prefix` then `cycle` forever.
    OneWay { prefix: Vec<usize>, cycle: Vec<usize> },
    /// `core` at positions `0..core.len()`, `right` repeated after it and
    /// `left` repeated before it (position `-1` carries the last of `left`).
    TwoWay {
        left: Vec<usize>,
        core: Vec<usize>,
        right: Vec<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledPath {
    pub poset: Poset,
    pub shape: Shape,
}

fn minimal_cycle(cycle: &mut Vec<usize>) {
    let len = cycle.len();
    if let Some(p) = (1..=len)
        .filter(|p| len.is_multiple_of(*p))
        .find(|&p| (0..len).all(|i| cycle[i] == cycle[(i + p) % len]))
    {
        cycle.truncate(p);
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Number of positions where the label strictly increases by the period.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Increase {
    Finite(u64),
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodInfo {
    /// Signed on two-way paths when only one direction works.
    pub period: i64,
    pub increases: Increase,
}

impl LabelledPath {
    pub fn one_way(poset: Poset, prefix: Vec<usize>, cycle: Vec<usize>) -> Result<Self> {
        Self::build(poset, Shape::OneWay { prefix, cycle })
    }

    pub fn two_way(poset: Poset, left: Vec<usize>, core: Vec<usize>, right: Vec<usize>) -> Result<Self> {
        Self::build(poset, Shape::TwoWay { left, core, right })
    }

    fn build(poset: Poset, shape: Shape) -> Result<Self> {
        let labels: Vec<usize> = match &shape {
            Shape::OneWay { prefix, cycle } => {
                if cycle.is_empty() {
                    return Err(Error::Precondition("empty cycle".into()));
                }
                prefix.iter().chain(cycle).copied().collect()
            }
            Shape::TwoWay { left, core, right } => {
                if left.is_empty() || right.is_empty() {
                    return Err(Error::Precondition("empty cycle".into()));
                }
                left.iter().chain(core).chain(right).copied().collect()
            }
        };
        if labels.iter().any(|&l| l >= poset.len()) {
            return Err(Error::Precondition("label outside the poset".into()));
        }
        let mut p = LabelledPath { poset, shape };
        p.normalize();
        Ok(p)
    }

    fn normalize(&mut self) {
        match &mut self.shape {
            Shape::OneWay { prefix, cycle } => {
                minimal_cycle(cycle);
                while prefix.last() == cycle.last() && !prefix.is_empty() {
                    prefix.pop();
                    cycle.rotate_right(1);
                }
            }
            Shape::TwoWay { left, core, right } => {
                minimal_cycle(left);
                minimal_cycle(right);
                while !core.is_empty() && core.last() == right.last() {
                    core.pop();
                    right.rotate_right(1);
                }
                while !core.is_empty() && core[0] == left[0] {
                    core.remove(0);
                    left.rotate_left(1);
                }
            }
        }
    }

    pub fn is_one_way(&self) -> bool {
        matches!(self.shape, Shape::OneWay { .. })
    }

    pub fn label(&self, n: i64) -> usize {
        match &self.shape {
            Shape::OneWay { prefix, cycle } => {
                let n = n.max(0) as usize;
                if n < prefix.len() {
                    prefix[n]
                } else {
                    cycle[(n - prefix.len()) % cycle.len()]
                }
            }
            Shape::TwoWay { left, core, right } => {
                let c = core.len() as i64;
                if n < 0 {
                    left[n.rem_euclid(left.len() as i64) as usize]
                } else if n < c {
                    core[n as usize]
                } else {
                    right[((n - c) as usize) % right.len()]
                }
            }
        }
    }

    /// Length of the explicit part and the lcm of the cycle lengths.
    fn extent(&self) -> (i64, i64) {
        match &self.shape {
            Shape::OneWay { prefix, cycle } => (prefix.len() as i64, cycle.len() as i64),
            Shape::TwoWay { left, core, right } => (core.len() as i64, lcm(left.len(), right.len()) as i64),
        }
    }

    /// Positions whose pair `(n, n + r)` represents every pair.
    fn window(&self, r: i64) -> std::ops::Range<i64> {
        match &self.shape {
            Shape::OneWay { prefix, cycle } => 0..(prefix.len() + cycle.len()) as i64,
            Shape::TwoWay { left, core, right } => {
                let c = core.len() as i64;
                (0i64.min(-r) - left.len() as i64)..(c.max(c - r) + right.len() as i64)
            }
        }
    }

    pub fn is_r_periodic(&self, r: i64) -> bool {
        if r == 0 || (self.is_one_way() && r < 0) {
            return false;
        }
        self.window(r)
            .all(|n| self.poset.leq(self.label(n), self.label(n + r)))
    }

    /// Least `|r|` with `label(n) <= label(n + r)` everywhere, and the
    /// number of strict increases along it.
    pub fn period(&self) -> Option<PeriodInfo> {
        let (c, l) = self.extent();
        let bound = c + 3 * l + 1;
        let period = (1..=bound).find_map(|m| match (self.is_r_periodic(m), self.is_r_periodic(-m)) {
            (true, _) => Some(m),
            (false, true) => Some(-m),
            _ => None,
        })?;
        Some(PeriodInfo {
            period,
            increases: self.increases(period),
        })
    }

    fn increases(&self, p: i64) -> Increase {
        let strict = |n: i64| self.poset.lt(self.label(n), self.label(n + p));
        match &self.shape {
            Shape::OneWay { prefix, cycle } => {
                let start = prefix.len() as i64;
                if (start..start + cycle.len() as i64).any(strict) {
                    Increase::Infinite
                } else {
                    Increase::Finite((0..start).filter(|&n| strict(n)).count() as u64)
                }
            }
            Shape::TwoWay { left, core, right } => {
                let c = core.len() as i64;
                let lo = 0i64.min(-p);
                let hi = c.max(c - p);
                let tails = (lo - left.len() as i64..lo).chain(hi..hi + right.len() as i64);
                if tails.clone().any(strict) {
                    Increase::Infinite
                } else {
                    Increase::Finite((lo..hi).filter(|&n| strict(n)).count() as u64)
                }
            }
        }
    }

    fn is_constant_least(&self) -> bool {
        let Some(zero) = self.poset.least() else {
            return false;
        };
        let (c, l) = self.extent();
        match &self.shape {
            Shape::OneWay { .. } => (0..c + l).all(|n| self.label(n) == zero),
            Shape::TwoWay { left, .. } => (-(left.len() as i64)..c + l).all(|n| self.label(n) == zero),
        }
    }

    /// Label-preserving path embedding of `self` into `other`.
    pub fn embeds_into(&self, other: &LabelledPath) -> bool {
        self.find_map_into(other, false)
    }

    pub fn is_isomorphic(&self, other: &LabelledPath) -> bool {
        self.find_map_into(other, true)
    }

    fn find_map_into(&self, other: &LabelledPath, exact: bool) -> bool {
        let ok = |a: usize, b: usize| {
            if exact {
                a == b
            } else {
                self.poset.leq(a, b)
            }
        };
        let (ca, la) = self.extent();
        let (cb, lb) = other.extent();
        let period = lcm(la as usize, lb as usize) as i64;
        match (&self.shape, &other.shape) {
            (Shape::OneWay { .. }, Shape::OneWay { .. }) => {
                let shifts = if exact { 0..=0 } else { 0..=cb + lb };
                shifts
                    .into_iter()
                    .any(|s| (0..ca.max(cb) + s + period).all(|n| ok(self.label(n), other.label(n + s))))
            }
            (Shape::TwoWay { .. }, Shape::TwoWay { .. }) => {
                let reach = ca + cb + 2 * period;
                let span = reach + ca + cb + 2 * period;
                (-reach..=reach).any(|s| {
                    [1i64, -1]
                        .into_iter()
                        .any(|sign| (-span..=span).all(|n| ok(self.label(n), other.label(sign * n + s))))
                })
            }
            _ => false,
        }
    }

    pub fn is_twin_of(&self, other: &LabelledPath) -> bool {
        self.embeds_into(other) && other.embeds_into(self)
    }

    /// The same labels with `zeros` least labels in front (one-way only).
    fn padded(&self, zeros: usize) -> Result<LabelledPath> {
        let Shape::OneWay { prefix, cycle } = &self.shape else {
            return Err(Error::Unsupported("padding applies to one-way paths".into()));
        };
        let zero = self
            .poset
            .least()
            .ok_or_else(|| Error::Precondition("no least label".into()))?;
        let mut p = vec![zero; zeros];
        p.extend_from_slice(prefix);
        LabelledPath::one_way(self.poset.clone(), p, cycle.clone())
    }

    /// Labels at `positions` lowered to the least label (two-way only).
    fn lowered(&self, positions: &[i64]) -> Result<LabelledPath> {
        let Shape::TwoWay { left, right, .. } = &self.shape else {
            return Err(Error::Unsupported("lowering applies to two-way paths".into()));
        };
        let zero = self
            .poset
            .least()
            .ok_or_else(|| Error::Precondition("no least label".into()))?;
        let (c, _) = self.extent();
        let lo = positions.iter().copied().min().unwrap_or(0).min(0);
        let hi = positions.iter().copied().max().unwrap_or(0).max(c - 1);
        // keep the left cycle aligned by starting on a multiple of its length
        let ll = left.len() as i64;
        let lo = lo.div_euclid(ll) * ll;
        let core: Vec<usize> = (lo..=hi)
            .map(|n| {
                if positions.contains(&n) {
                    zero
                } else {
                    self.label(n)
                }
            })
            .collect();
        let mut right = right.clone();
        let offset = ((hi + 1 - c).max(0) as usize) % right.len();
        right.rotate_left(offset);
        LabelledPath::two_way(self.poset.clone(), left.clone(), core, right)
    }

    pub fn twin_count(&self) -> (TwinCard, String) {
        if self.poset.is_antichain() {
            if let Shape::TwoWay { .. } = self.shape {
                return (TwinCard::One, "antichain labels on a two-way path".into());
            }
            let Shape::OneWay { prefix, cycle } = &self.shape else {
                unreachable!()
            };
            if !prefix.is_empty() {
                return (TwinCard::One, "antichain labels, not periodic".into());
            }
            return match cycle.len() {
                1 => (TwinCard::One, "constant labels".into()),
                p => (
                    TwinCard::Exactly(p as u64),
                    format!("antichain labels of period {p}"),
                ),
            };
        }
        if self.poset.least().is_none() {
            return (
                TwinCard::Unknown,
                "poset has no least element and is not an antichain".into(),
            );
        }
        let Some(info) = self.period() else {
            return (TwinCard::One, "labels not periodic".into());
        };
        if info.increases == Increase::Infinite {
            return (
                TwinCard::Continuum,
                format!("period {} with infinitely many increases", info.period),
            );
        }
        match self.shape {
            Shape::OneWay { .. } if self.is_constant_least() => {
                (TwinCard::One, "constant least label".into())
            }
            Shape::TwoWay { .. } if info.increases == Increase::Finite(0) => {
                (TwinCard::One, format!("period {} without increases", info.period))
            }
            _ => {
                let n = match info.increases {
                    Increase::Finite(n) => n.to_string(),
                    Increase::Infinite => unreachable!("handled above"),
                };
                (
                    TwinCard::Infinite,
                    format!("period {} with {n} increases", info.period),
                )
            }
        }
    }

    /// Up to `k` pairwise non-isomorphic twins, each checked by exact
    /// embedding both ways.
    pub fn enumerate_twins(&self, k: usize) -> Result<(Vec<LabelledPath>, Option<String>)> {
        let (card, why) = self.twin_count();
        let mut out: Vec<LabelledPath> = vec![self.clone()];
        let consider = |cand: LabelledPath, out: &mut Vec<LabelledPath>| {
            if out.len() < k && cand.is_twin_of(self) && out.iter().all(|o| !o.is_isomorphic(&cand)) {
                out.push(cand);
            }
        };
        match card {
            TwinCard::One => {}
            TwinCard::Unknown => return Err(Error::Precondition(why)),
            TwinCard::Exactly(_) => {
                let Shape::OneWay { cycle, .. } = &self.shape else {
                    unreachable!("exact counts come from one-way antichains")
                };
                for r in 1..cycle.len() {
                    let mut c = cycle.clone();
                    c.rotate_left(r);
                    consider(
                        LabelledPath::one_way(self.poset.clone(), Vec::new(), c)?,
                        &mut out,
                    );
                }
            }
            TwinCard::Infinite | TwinCard::Continuum => {
                let period = self.period().expect("periodic").period.unsigned_abs() as usize;
                if self.is_one_way() {
                    for j in 1..4 * k + 4 {
                        consider(self.padded(j * period)?, &mut out);
                    }
                } else {
                    let zero = self.poset.least().expect("least element");
                    let (c, l) = self.extent();
                    let raised: Vec<i64> = (-l..c + 4 * l * k as i64)
                        .filter(|&n| self.label(n) != zero)
                        .collect();
                    for (i, &m) in raised.iter().enumerate() {
                        consider(self.lowered(&[m])?, &mut out);
                        for &m2 in &raised[i + 1..] {
                            if out.len() >= k {
                                break;
                            }
                            consider(self.lowered(&[m, m2])?, &mut out);
                        }
                    }
                }
            }
        }
        out.truncate(k);
        let note = (out.len() < k).then(|| format!("only {} twins ({why})", out.len()));
        Ok((out, note))
    }
}

fn write_labels(f: &mut fmt::Formatter<'_>, poset: &Poset, labels: &[usize]) -> fmt::Result {
    let names: Vec<&str> = labels.iter().map(|&l| poset.name(l)).collect();
    write!(f, "{}", names.join(","))
}

impl fmt::Display for LabelledPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.shape {
            Shape::OneWay { prefix, cycle } => {
                write!(f, "lpath oneway {}", self.poset)?;
                if !prefix.is_empty() {
                    write!(f, " prefix[")?;
                    write_labels(f, &self.poset, prefix)?;
                    write!(f, "]")?;
                }
                write!(f, " cycle(")?;
                write_labels(f, &self.poset, cycle)?;
                write!(f, ")")
            }
            Shape::TwoWay { left, core, right } => {
                write!(f, "lpath twoway {} left(", self.poset)?;
                write_labels(f, &self.poset, left)?;
                write!(f, ")")?;
                if !core.is_empty() {
                    write!(f, " core[")?;
                    write_labels(f, &self.poset, core)?;
                    write!(f, "]")?;
                }
                write!(f, " right(")?;
                write_labels(f, &self.poset, right)?;
                write!(f, ")")
            }
        }
    }
}

/// Splits `name{body}`, `name[body]` or `name(body)` off the front of `s`.
fn group<'a>(s: &'a str, name: &str, open: char, close: char) -> Option<(&'a str, &'a str)> {
    let rest = s
        .trim_start()
        .strip_prefix(name)?
        .trim_start()
        .strip_prefix(open)?;
    let end = rest.find(close)?;
    Some((&rest[..end], &rest[end + 1..]))
}

fn names(body: &str) -> Vec<String> {
    body.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

impl FromStr for LabelledPath {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let syntax = |msg: &str| Error::Syntax {
            pos: 0,
            msg: format!("{msg} in '{text}'"),
        };
        let rest = text
            .trim()
            .strip_prefix("lpath")
            .ok_or_else(|| syntax("expected 'lpath'"))?
            .trim_start();
        let (two_way, rest) = if let Some(r) = rest.strip_prefix("oneway") {
            (false, r)
        } else if let Some(r) = rest.strip_prefix("twoway") {
            (true, r)
        } else {
            return Err(syntax("expected 'oneway' or 'twoway'"));
        };
        let (poset, rest) = if let Some((body, r)) = group(rest, "antichain", '{', '}') {
            (Poset::antichain(names(&body.replace(' ', ""))), r)
        } else if let Some((body, r)) = group(rest, "poset", '{', '}') {
            let mut elems: Vec<String> = Vec::new();
            let mut rel = Vec::new();
            let intern = |s: &str, elems: &mut Vec<String>| {
                elems.iter().position(|e| e == s).unwrap_or_else(|| {
                    elems.push(s.to_string());
                    elems.len() - 1
                })
            };
            for item in names(body) {
                let chain: Vec<usize> = item.split('<').map(|s| intern(s.trim(), &mut elems)).collect();
                rel.extend(chain.windows(2).map(|w| (w[0], w[1])));
            }
            (Poset::new(elems, &rel)?, r)
        } else {
            return Err(syntax("expected 'poset{..}' or 'antichain{..}'"));
        };
        let labels = |body: &str| -> Result<Vec<usize>> {
            names(body)
                .iter()
                .map(|n| {
                    poset
                        .index(n)
                        .ok_or_else(|| syntax(&format!("unknown label '{n}'")))
                })
                .collect()
        };
        if two_way {
            let (l, rest) = group(rest, "left", '(', ')').ok_or_else(|| syntax("expected left(..)"))?;
            let (core, rest) = match group(rest, "core", '[', ']') {
                Some((c, r)) => (labels(c)?, r),
                None => (Vec::new(), rest),
            };
            let (r, tail) = group(rest, "right", '(', ')').ok_or_else(|| syntax("expected right(..)"))?;
            if !tail.trim().is_empty() {
                return Err(syntax("trailing input"));
            }
            LabelledPath::two_way(poset.clone(), labels(l)?, core, labels(r)?)
        } else {
            let (prefix, rest) = match group(rest, "prefix", '[', ']') {
                Some((p, r)) => (labels(p)?, r),
                None => (Vec::new(), rest),
            };
            let (c, tail) = group(rest, "cycle", '(', ')').ok_or_else(|| syntax("expected cycle(..)"))?;
            if !tail.trim().is_empty() {
                return Err(syntax("trailing input"));
            }
            LabelledPath::one_way(poset.clone(), prefix, labels(c)?)
        }
    }
}

/// Lower bound on the number of twins from choosing one label in each
/// class of equivalent labels. `None` is an infinite class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChoiceBound {
    Finite(u128),
    Infinite,
}

pub fn label_choice_lower_bound(class_sizes: &[Option<u64>]) -> Result<ChoiceBound> {
    let mut total: u128 = 1;
    for size in class_sizes {
        match size {
            None => return Ok(ChoiceBound::Infinite),
            Some(0) => return Err(Error::Precondition("empty equivalence class".into())),
            Some(s) => {
                total = total.checked_mul(*s as u128).ok_or(Error::TooLarge {
                    n: usize::MAX,
                    bound: u128::MAX as usize,
                })?
            }
        }
    }
    Ok(ChoiceBound::Finite(total))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LabelledPath {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print() {
        for s in [
            "lpath oneway antichain{a,b} cycle(a,b)",
            "lpath oneway poset{0<a} prefix[a] cycle(0)",
            "lpath twoway poset{0<a} left(0) core[a] right(0)",
        ] {
            assert_eq!(lp(s).to_string(), s);
        }
        assert_eq!(
            lp("lpath oneway antichain{a} prefix[a,a] cycle(a,a)").to_string(),
            "lpath oneway antichain{a} cycle(a)"
        );
        assert!("lpath oneway antichain{a} cycle(b)"
            .parse::<LabelledPath>()
            .is_err());
        assert!("lpath sideways antichain{a} cycle(a)"
            .parse::<LabelledPath>()
            .is_err());
    }

    #[test]
    fn periods() {
        let info = lp("lpath oneway antichain{a} cycle(a)").period().unwrap();
        assert_eq!(
            info,
            PeriodInfo {
                period: 1,
                increases: Increase::Finite(0)
            }
        );
        let info = lp("lpath oneway antichain{a,b} cycle(a,b)").period().unwrap();
        assert_eq!(
            info,
            PeriodInfo {
                period: 2,
                increases: Increase::Finite(0)
            }
        );
        let info = lp("lpath oneway poset{0<a} cycle(0,a)").period().unwrap();
        assert_eq!(
            info,
            PeriodInfo {
                period: 2,
                increases: Increase::Finite(0)
            }
        );
        let info = lp("lpath twoway poset{0<a} left(0) right(a)").period().unwrap();
        assert_eq!(
            info,
            PeriodInfo {
                period: 1,
                increases: Increase::Finite(1)
            }
        );
        let info = lp("lpath twoway poset{0<a} left(0,a,a) right(0,a)").period();
        assert!(info.is_none());
    }

    #[test]
    fn counts() {
        let card = |s: &str| lp(s).twin_count().0;
        assert_eq!(
            card("lpath oneway antichain{a,b} cycle(a,b)"),
            TwinCard::Exactly(2)
        );
        assert_eq!(
            card("lpath oneway antichain{a,b} prefix[a] cycle(b)"),
            TwinCard::One
        );
        assert_eq!(
            card("lpath oneway poset{0<a,0<b} prefix[a] cycle(b)"),
            TwinCard::One
        );
        assert_eq!(
            card("lpath twoway poset{0<a} left(0,a) right(0,a)"),
            TwinCard::One
        );
        assert_eq!(card("lpath oneway poset{0<a} cycle(0)"), TwinCard::One);
        assert_eq!(card("lpath oneway poset{0<a} cycle(0,a)"), TwinCard::Infinite);
        assert_eq!(
            card("lpath twoway poset{0<a} left(0) right(a)"),
            TwinCard::Infinite
        );
        assert_eq!(card("lpath oneway poset{a<b,c<b} cycle(a,c)"), TwinCard::Unknown);
    }

    #[test]
    fn rotations() {
        for (cycle, p) in [("a", 1), ("a,b", 2), ("a,a,b", 3)] {
            let path = lp(&format!("lpath oneway antichain{{a,b}} cycle({cycle})"));
            let (twins, note) = path.enumerate_twins(5).unwrap();
            assert_eq!(twins.len(), p);
            assert!(note.is_some() || p == 5);
            for (i, x) in twins.iter().enumerate() {
                assert!(x.is_twin_of(&path));
                for y in &twins[i + 1..] {
                    assert!(!x.is_isomorphic(y));
                }
            }
        }
    }

    #[test]
    fn padding_and_lowering() {
        let path = lp("lpath oneway poset{0<a} cycle(0,a)");
        let (twins, note) = path.enumerate_twins(5).unwrap();
        assert_eq!((twins.len(), note), (5, None));
        let path = lp("lpath twoway poset{0<a} left(0) right(a)");
        let (twins, _) = path.enumerate_twins(4).unwrap();
        assert_eq!(twins.len(), 4);
        for (i, x) in twins.iter().enumerate() {
            assert!(x.is_twin_of(&path));
            for y in &twins[i + 1..] {
                assert!(!x.is_isomorphic(y));
            }
        }
        let constant = lp("lpath oneway poset{0<a} cycle(0)");
        assert_eq!(constant.enumerate_twins(1).unwrap().0, vec![constant.clone()]);
    }

    #[test]
    fn choice_bounds() {
        assert_eq!(
            label_choice_lower_bound(&[Some(1), Some(1)]).unwrap(),
            ChoiceBound::Finite(1)
        );
        assert_eq!(
            label_choice_lower_bound(&[Some(3), Some(1)]).unwrap(),
            ChoiceBound::Finite(3)
        );
        assert_eq!(
            label_choice_lower_bound(&[Some(2), Some(3)]).unwrap(),
            ChoiceBound::Finite(6)
        );
        assert_eq!(
            label_choice_lower_bound(&[Some(2), None]).unwrap(),
            ChoiceBound::Infinite
        );
    }
}
